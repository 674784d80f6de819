#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "mvmap/error.hpp"
#include "mvmap/field.hpp"
#include "mvmap/int_poly.hpp"

namespace mvmap {

struct CrtComponent {
    std::uint64_t p;
    unsigned l;
    std::uint64_t modulus;     // p^l
    std::uint64_t cofactor;    // N / p^l
    std::uint64_t m;           // cofactor^{-1} mod p^l
    std::uint64_t idempotent;  // m * cofactor mod N
};

// Z_N with its prime-power factorization supplied by the caller; N is never factored here.
class RingCtx {
public:
    RingCtx(std::uint64_t N, std::vector<std::pair<std::uint64_t, unsigned>> factorization);
    static RingCtx prime_power(std::uint64_t p, unsigned l);

    std::uint64_t modulus() const { return N_; }
    const std::vector<CrtComponent>& components() const { return comps_; }
    std::uint64_t phi() const;

    bool contains(Value a) const { return a < N_; }
    Value from_int(std::int64_t k) const;
    Value add(Value a, Value b) const;
    Value sub(Value a, Value b) const;
    Value neg(Value a) const;
    Value mul(Value a, Value b) const;
    Value pow_u(Value a, std::uint64_t k) const;
    bool is_unit(Value a) const;
    Value inv(Value a) const;

    std::vector<Value> crt_split(Value x) const;
    Value crt_join(std::span<const Value> residues) const;

private:
    std::uint64_t N_;
    std::vector<CrtComponent> comps_;
};

std::uint64_t euler_phi(std::uint64_t n);

// Maps base-level values into the exponent ring(s). Components are:
//   discrete log:  F* -> Z_{q-1}
//   ring hom:      Z_{p^l} -> Z_{phi(p^l)},  x -> (p-1) * (w x mod p^{l-1}),  w = (p-1)^{-1} mod p^{l-1}
// A product hom applies one component per CRT factor of Z_N, using the
// discrete log of GF(p) for factors with l = 1.
class PortingHom {
public:
    enum class Kind { DiscreteLog, RingHom, Product };

    struct Component {
        bool is_log;
        std::uint64_t in_modulus;   // reduce the argument modulo this first
        std::uint64_t out_modulus;  // target Z_m
        std::uint64_t p = 0;
        unsigned l = 0;
        std::uint64_t w = 0;
        std::uint64_t pl1 = 0;  // p^{l-1}
        std::shared_ptr<const Field> field;
    };

    static PortingHom discrete_log(std::shared_ptr<const Field> F);
    static PortingHom ring_hom(std::uint64_t p, unsigned l);
    static PortingHom product(const RingCtx& R);

    Kind kind() const { return kind_; }
    const std::vector<Component>& components() const { return comps_; }
    std::vector<std::uint64_t> target_moduli() const;

    // Throws NonUnitBase when a log component receives a value divisible by its prime.
    std::vector<std::uint64_t> apply(Value x) const;
    std::uint64_t apply_component(std::size_t i, Value x) const;

private:
    Kind kind_ = Kind::DiscreteLog;
    std::vector<Component> comps_;
};

PortingHom porting_hom_zpl(std::uint64_t p, unsigned l);

// True iff f(x) is a unit of Z_N for every x, decided per CRT factor modulo p_i.
bool ring_unit_check(const RingCtx& R, const IntPoly& f);
// True iff f permutes Z_N: per factor, f mod p_i permutes Z_{p_i} and, when l_i >= 2,
// f' has no root modulo p_i.
bool ring_bijective_check(const RingCtx& R, const IntPoly& f);

}  // namespace mvmap
