#include "mvmap/ring.hpp"

#include <string>

#include "mvmap/modarith.hpp"

namespace mvmap {

using modarith::addmod;
using modarith::mulmod;
using modarith::submod;

RingCtx::RingCtx(std::uint64_t N, std::vector<std::pair<std::uint64_t, unsigned>> factorization) : N_(N) {
    if (N < 2) fail(Errc::InvalidArgument, "ring modulus must be at least 2");
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < factorization.size(); ++i) {
        auto [p, l] = factorization[i];
        if (!modarith::is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
        if (l == 0) fail(Errc::InvalidArgument, "exponent must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (factorization[j].first == p) fail(Errc::InvalidArgument, "repeated prime in factorization");
        std::uint64_t pl = 1;
        for (unsigned k = 0; k < l; ++k) {
            if (pl > N / p) fail(Errc::InvalidArgument, "factorization does not match modulus");
            pl *= p;
        }
        if (prod > N / pl) fail(Errc::InvalidArgument, "factorization does not match modulus");
        prod *= pl;
        comps_.push_back({p, l, pl, 0, 0, 0});
    }
    if (prod != N) fail(Errc::InvalidArgument, "factorization does not match modulus");
    for (auto& c : comps_) {
        c.cofactor = N / c.modulus;
        c.m = *modarith::invmod(c.cofactor % c.modulus, c.modulus);
        c.idempotent = mulmod(c.m, c.cofactor, N);
    }
}

RingCtx RingCtx::prime_power(std::uint64_t p, unsigned l) {
    std::uint64_t N = 1;
    for (unsigned k = 0; k < l; ++k) N *= p;
    return RingCtx(N, {{p, l}});
}

std::uint64_t RingCtx::phi() const {
    std::uint64_t r = 1;
    for (auto& c : comps_) r *= c.modulus / c.p * (c.p - 1);
    return r;
}

Value RingCtx::from_int(std::int64_t k) const { return modarith::reduce_signed(k, N_); }
Value RingCtx::add(Value a, Value b) const { return addmod(a, b, N_); }
Value RingCtx::sub(Value a, Value b) const { return submod(a, b, N_); }
Value RingCtx::neg(Value a) const { return a == 0 ? 0 : N_ - a; }
Value RingCtx::mul(Value a, Value b) const { return mulmod(a, b, N_); }

Value RingCtx::pow_u(Value a, std::uint64_t k) const {
    if (k == 0) return 1 % N_;
    return modarith::powmod(a, k, N_);
}

bool RingCtx::is_unit(Value a) const { return modarith::gcd(a % N_, N_) == 1; }

Value RingCtx::inv(Value a) const {
    auto r = modarith::invmod(a % N_, N_);
    if (!r) fail(Errc::NonUnitBase, std::to_string(a) + " is not a unit mod " + std::to_string(N_));
    return *r;
}

std::vector<Value> RingCtx::crt_split(Value x) const {
    if (x >= N_) fail(Errc::ResidueOutOfRange, "residue out of range");
    std::vector<Value> r;
    r.reserve(comps_.size());
    for (auto& c : comps_) r.push_back(x % c.modulus);
    return r;
}

Value RingCtx::crt_join(std::span<const Value> residues) const {
    if (residues.size() != comps_.size()) fail(Errc::InvalidArgument, "wrong number of residues");
    Value x = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (residues[i] >= comps_[i].modulus) fail(Errc::ResidueOutOfRange, "residue out of range");
        x = addmod(x, mulmod(residues[i], comps_[i].idempotent, N_), N_);
    }
    return x;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) fail(Errc::InvalidArgument, "phi(0) undefined");
    std::uint64_t r = n;
    for (auto [p, e] : modarith::factorize(n)) r = r / p * (p - 1);
    return r;
}

namespace {

PortingHom::Component zpl_component(std::uint64_t p, unsigned l) {
    PortingHom::Component c{};
    c.is_log = false;
    c.p = p;
    c.l = l;
    c.pl1 = modarith::ipow(p, l - 1);
    c.in_modulus = c.pl1 * p;
    c.out_modulus = c.pl1 * (p - 1);
    c.w = *modarith::invmod((p - 1) % c.pl1, c.pl1);
    return c;
}

PortingHom::Component log_component(std::shared_ptr<const Field> F) {
    PortingHom::Component c{};
    c.is_log = true;
    c.p = F->characteristic();
    c.l = 1;
    c.in_modulus = F->order();
    c.out_modulus = F->order() - 1;
    c.field = std::move(F);
    return c;
}

}  // namespace

PortingHom PortingHom::discrete_log(std::shared_ptr<const Field> F) {
    PortingHom h;
    h.kind_ = Kind::DiscreteLog;
    h.comps_.push_back(log_component(std::move(F)));
    return h;
}

PortingHom PortingHom::ring_hom(std::uint64_t p, unsigned l) {
    if (!modarith::is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (l < 2) fail(Errc::InvalidArgument, "ring hom needs l >= 2; use the discrete log for l = 1");
    PortingHom h;
    h.kind_ = Kind::RingHom;
    h.comps_.push_back(zpl_component(p, l));
    return h;
}

PortingHom PortingHom::product(const RingCtx& R) {
    PortingHom h;
    h.kind_ = Kind::Product;
    for (auto& c : R.components()) {
        if (c.l >= 2)
            h.comps_.push_back(zpl_component(c.p, c.l));
        else
            h.comps_.push_back(log_component(std::make_shared<const Field>(Field::prime(c.p))));
    }
    return h;
}

std::vector<std::uint64_t> PortingHom::target_moduli() const {
    std::vector<std::uint64_t> r;
    for (auto& c : comps_) r.push_back(c.out_modulus);
    return r;
}

std::uint64_t PortingHom::apply_component(std::size_t i, Value x) const {
    const Component& c = comps_[i];
    if (c.is_log) {
        Value v = (c.field->degree() == 1) ? x % c.in_modulus : x;
        if (v == 0) fail(Errc::NonUnitBase, "log of a non-unit");
        return c.field->log(v);
    }
    Value v = x % c.in_modulus;
    return mulmod(c.p - 1, mulmod(c.w, v, c.pl1), c.out_modulus);
}

std::vector<std::uint64_t> PortingHom::apply(Value x) const {
    std::vector<std::uint64_t> r;
    r.reserve(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) r.push_back(apply_component(i, x));
    return r;
}

PortingHom porting_hom_zpl(std::uint64_t p, unsigned l) { return PortingHom::ring_hom(p, l); }

bool ring_unit_check(const RingCtx& R, const IntPoly& f) {
    for (auto& c : R.components())
        for (std::uint64_t x = 0; x < c.p; ++x)
            if (f.eval(x, c.p) == 0) return false;
    return true;
}

bool ring_bijective_check(const RingCtx& R, const IntPoly& f) {
    for (auto& c : R.components()) {
        std::vector<bool> seen(c.p, false);
        for (std::uint64_t x = 0; x < c.p; ++x) {
            auto y = f.eval(x, c.p);
            if (seen[y]) return false;
            seen[y] = true;
        }
        if (c.l >= 2) {
            auto d = f.derivative(c.p);
            for (std::uint64_t x = 0; x < c.p; ++x)
                if (d.eval(x, c.p) == 0) return false;
        }
    }
    return true;
}

}  // namespace mvmap
