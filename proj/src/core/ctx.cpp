#include "mvmap/ctx.hpp"

#include "mvmap/modarith.hpp"

namespace mvmap {

Ctx::Ctx(std::shared_ptr<const Field> F) : field_(std::move(F)), hom_(PortingHom::discrete_log(field_)) {
    moduli_ = hom_.target_moduli();
    size_ = field_->order();
}

Ctx::Ctx(std::shared_ptr<const RingCtx> R) : ring_(std::move(R)), hom_(PortingHom::product(*ring_)) {
    if (ring_->components().size() > kMaxExpoComponents) fail(Errc::TooLarge, "too many CRT factors");
    moduli_ = hom_.target_moduli();
    size_ = ring_->modulus();
}

Ctx Ctx::field(std::uint64_t p, unsigned n) {
    return Ctx(std::make_shared<const Field>(Field::with_default_modulus(p, n)));
}

const Field& Ctx::field() const {
    if (!field_) fail(Errc::InvalidArgument, "context is not a field");
    return *field_;
}

const RingCtx& Ctx::ring() const {
    if (!ring_) fail(Errc::InvalidArgument, "context is not a residue ring");
    return *ring_;
}

ExpoVal Ctx::port(Value x) const {
    ExpoVal e;
    if (field_) {
        if (x == 0) fail(Errc::LogOfZero, "log of zero");
        e.r[0] = field_->log(x);
        return e;
    }
    for (std::size_t i = 0; i < moduli_.size(); ++i) e.r[i] = hom_.apply_component(i, x);
    return e;
}

ExpoVal Ctx::expo_const(std::int64_t k) const {
    ExpoVal e;
    for (std::size_t i = 0; i < moduli_.size(); ++i) e.r[i] = modarith::reduce_signed(k, moduli_[i]);
    return e;
}

Value Ctx::pow_ported(Value base, const ExpoVal& e) const {
    if (!is_unit(base)) fail(Errc::NonUnitBase, "variable exponent applied to a non-unit base");
    if (field_) return field_->pow_u(base, e.r[0]);
    auto parts = ring_->crt_split(base);
    const auto& comps = ring_->components();
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = modarith::powmod(parts[i], e.r[i], comps[i].modulus);
    return ring_->crt_join(parts);
}

std::string Ctx::describe() const {
    if (field_) {
        std::string s = "GF(" + std::to_string(field_->characteristic());
        if (field_->degree() > 1) s += "^" + std::to_string(field_->degree());
        return s + ")";
    }
    return "Z_" + std::to_string(ring_->modulus());
}

}  // namespace mvmap
