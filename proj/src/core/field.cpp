#include "mvmap/field.hpp"

#include <string>

#include "mvmap/modarith.hpp"

namespace mvmap {

namespace {

using modarith::addmod;
using modarith::mulmod;
using modarith::submod;

// Remainder of a modulo monic b, coefficients mod p.
std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> a, std::span<const std::uint64_t> b,
                                    std::uint64_t p) {
    const std::size_t db = b.size() - 1;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() > db) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = submod(a[shift + i], mulmod(lead, b[i], p), p);
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint64_t> f, std::uint64_t p) {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return n == 1;
    std::vector<std::uint64_t> g;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        const std::uint64_t count = modarith::ipow(p, static_cast<unsigned>(d));
        for (std::uint64_t code = 0; code < count; ++code) {
            g.assign(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            if (poly_rem({f.begin(), f.end()}, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned n) {
    if (n == 1) return {0, 1};
    const std::uint64_t count = modarith::ipow(p, n);
    std::vector<std::uint64_t> f(n + 1, 0);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t c = code;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[n] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    fail(Errc::Reducible, "no irreducible polynomial found");
}

Field::Field(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus, std::uint64_t max_order)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
    if (!modarith::is_prime(p)) fail(Errc::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) fail(Errc::InvalidArgument, "extension degree must be positive");
    for (unsigned i = 0; i < n; ++i) {
        if (q_ > max_order / p) fail(Errc::TooLarge, "field order exceeds bound " + std::to_string(max_order));
        q_ *= p;
    }
    if (modulus_.size() != n + 1 || modulus_[n] != 1)
        fail(Errc::InvalidArgument, "modulus must be monic of degree " + std::to_string(n));
    for (auto c : modulus_)
        if (c >= p) fail(Errc::InvalidArgument, "modulus coefficient out of range");
    if (!is_irreducible_mod_p(modulus_, p)) fail(Errc::Reducible, "modulus is reducible");

    // Primitive search by exhaustive order test on the slow path, then tables.
    const std::uint64_t order = q_ - 1;
    const auto primes = modarith::prime_divisors(order);
    auto slow_pow = [&](Value a, std::uint64_t k) {
        Value r = 1;
        while (k) {
            if (k & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            k >>= 1;
        }
        return r;
    };
    primitive_ = 0;
    for (Value g = 1; g < q_ && primitive_ == 0; ++g) {
        bool ok = true;
        for (auto r : primes)
            if (slow_pow(g, order / r) == 1) {
                ok = false;
                break;
            }
        if (ok) primitive_ = g;
    }
    exp_.assign(order, 0);
    log_.assign(q_, 0);
    Value cur = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
        exp_[k] = static_cast<std::uint32_t>(cur);
        log_[cur] = static_cast<std::uint32_t>(k);
        cur = mul_slow(cur, primitive_);
    }
}

Field Field::prime(std::uint64_t p) { return Field(p, 1, {0, 1}); }

Field Field::with_default_modulus(std::uint64_t p, unsigned n, std::uint64_t max_order) {
    if (!modarith::is_prime(p)) fail(Errc::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (q > max_order / p) fail(Errc::TooLarge, "field order exceeds bound " + std::to_string(max_order));
        q *= p;
    }
    return Field(p, n, default_modulus(p, n), max_order);
}

Value Field::from_int(std::int64_t k) const { return modarith::reduce_signed(k, p_); }

Value Field::add(Value a, Value b) const {
    if (n_ == 1) return addmod(a, b, p_);
    if (p_ == 2) return a ^ b;
    Value r = 0, place = 1;
    for (unsigned i = 0; i < n_; ++i) {
        r += addmod(a % p_, b % p_, p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

Value Field::neg(Value a) const {
    if (p_ == 2) return a;
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    Value r = 0, place = 1;
    for (unsigned i = 0; i < n_; ++i) {
        Value d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * place;
        a /= p_;
        place *= p_;
    }
    return r;
}

Value Field::inv(Value a) const {
    if (a == 0) fail(Errc::NonUnitBase, "zero has no inverse");
    const std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Value Field::pow_u(Value a, std::uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    if (q_ == 2) return 1;
    return exp_[mulmod(log_[a], k % (q_ - 1), q_ - 1)];
}

Value Field::pow(Value a, std::int64_t k) const {
    if (k >= 0) return pow_u(a, static_cast<std::uint64_t>(k));
    if (a == 0) fail(Errc::NonUnitBase, "negative power of zero");
    return pow_u(a, modarith::reduce_signed(k, q_ - 1));
}

std::uint64_t Field::log(Value g) const {
    if (g == 0) fail(Errc::LogOfZero, "discrete log of zero");
    if (g >= q_) fail(Errc::InvalidArgument, "element out of range");
    return log_[g];
}

std::vector<std::uint64_t> Field::coeffs(Value a) const {
    std::vector<std::uint64_t> c(n_);
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Value Field::pack(std::span<const std::uint64_t> c) const {
    if (c.size() != n_) fail(Errc::InvalidArgument, "coefficient vector has wrong length");
    Value r = 0;
    for (std::size_t i = n_; i-- > 0;) {
        if (c[i] >= p_) fail(Errc::InvalidArgument, "coefficient out of range");
        r = r * p_ + c[i];
    }
    return r;
}

Value Field::mul_slow(Value a, Value b) const {
    if (n_ == 1) return mulmod(a, b, p_);
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) prod[i + j] = addmod(prod[i + j], mulmod(ca[i], cb[j], p_), p_);
    auto rem = poly_rem(std::move(prod), modulus_, p_);
    rem.resize(n_, 0);
    return pack(rem);
}

Value find_primitive(const Field& F) {
    const std::uint64_t order = F.order() - 1;
    const auto primes = modarith::prime_divisors(order);
    for (Value g = 1; g < F.order(); ++g) {
        bool ok = true;
        for (auto r : primes)
            if (F.pow_u(g, order / r) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    fail(Errc::NotPrimitive, "no primitive element");
}

std::uint64_t discrete_log(const Field& F, Value a, Value g) {
    if (g == 0) fail(Errc::LogOfZero, "discrete log of zero");
    if (a == 0 || !F.contains(a) || !F.contains(g)) fail(Errc::InvalidArgument, "element out of range");
    const std::uint64_t order = F.order() - 1;
    if (order == 1) return 0;
    auto la_inv = modarith::invmod(F.log(a), order);
    if (!la_inv) fail(Errc::NotPrimitive, "base is not primitive");
    return mulmod(F.log(g), *la_inv, order);
}

Value field_pow(const Field& F, Value x, std::int64_t k) { return F.pow(x, k); }

}  // namespace mvmap
