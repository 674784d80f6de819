#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "mvmap/error.hpp"
#include "mvmap/field.hpp"
#include "mvmap/ring.hpp"

namespace mvmap {

inline constexpr std::size_t kMaxExpoComponents = 16;

// A value of the exponent level: one residue per target modulus of the porting hom.
struct ExpoVal {
    std::array<std::uint64_t, kMaxExpoComponents> r{};
};

// Arithmetic context for expressions: either GF(q) with discrete-log porting,
// or Z_N with the per-factor product porting hom.
class Ctx {
public:
    explicit Ctx(std::shared_ptr<const Field> F);
    explicit Ctx(std::shared_ptr<const RingCtx> R);
    static Ctx field(std::uint64_t p, unsigned n = 1);

    bool is_field() const { return static_cast<bool>(field_); }
    const Field& field() const;
    const RingCtx& ring() const;
    std::shared_ptr<const Field> field_ptr() const { return field_; }

    // Number of elements; elements are the codes 0 .. size() - 1.
    std::uint64_t size() const { return size_; }
    bool contains(Value a) const { return a < size_; }

    Value from_int(std::int64_t k) const { return field_ ? field_->from_int(k) : ring_->from_int(k); }
    Value add(Value a, Value b) const { return field_ ? field_->add(a, b) : ring_->add(a, b); }
    Value sub(Value a, Value b) const { return field_ ? field_->sub(a, b) : ring_->sub(a, b); }
    Value neg(Value a) const { return field_ ? field_->neg(a) : ring_->neg(a); }
    Value mul(Value a, Value b) const { return field_ ? field_->mul(a, b) : ring_->mul(a, b); }
    Value pow_u(Value a, std::uint64_t k) const { return field_ ? field_->pow_u(a, k) : ring_->pow_u(a, k); }
    bool is_unit(Value a) const { return field_ ? a != 0 : ring_->is_unit(a); }
    Value inv(Value a) const { return field_ ? field_->inv(a) : ring_->inv(a); }

    const PortingHom& hom() const { return hom_; }
    std::size_t expo_components() const { return moduli_.size(); }
    std::uint64_t expo_modulus(std::size_t i) const { return moduli_[i]; }

    ExpoVal port(Value x) const;
    ExpoVal expo_const(std::int64_t k) const;
    // base^e for a unit base, component-wise over the CRT factors.
    Value pow_ported(Value base, const ExpoVal& e) const;

    std::string describe() const;

private:
    std::shared_ptr<const Field> field_;
    std::shared_ptr<const RingCtx> ring_;
    PortingHom hom_;
    std::vector<std::uint64_t> moduli_;
    std::uint64_t size_ = 0;
};

}  // namespace mvmap
