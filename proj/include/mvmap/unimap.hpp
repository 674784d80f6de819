#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/expr.hpp"
#include "mvmap/int_poly.hpp"
#include "mvmap/partition.hpp"
#include "mvmap/rng.hpp"
#include "mvmap/sexp.hpp"

namespace mvmap {

enum class CarrierKind { Field, FieldUnits, ResidueRing, Subgroup };

struct Carrier {
    CarrierKind kind = CarrierKind::Field;
    std::uint64_t ambient = 0;    // codes live in [0, ambient)
    std::vector<Value> elements;  // increasing
    std::vector<char> member;

    static Carrier make(CarrierKind kind, std::uint64_t ambient, std::vector<Value> elements);
    static Carrier whole(CarrierKind kind, std::uint64_t n);
    static Carrier field_units(std::uint64_t q);
    bool contains(Value v) const { return v < ambient && member[v]; }
    std::size_t size() const { return elements.size(); }
};

// Bijection of a finite carrier, stored as forward and inverse value tables together
// with whichever closed forms the construction provides.
class UniBijection {
public:
    static constexpr Value kNone = ~Value{0};

    // forward is indexed by code over [0, ambient); entries outside the carrier are ignored.
    // Throws NotPermutation unless it maps the carrier bijectively onto itself.
    UniBijection(Carrier carrier, std::vector<Value> forward);
    // Same, with a separately computed inverse table that is cross-checked against forward.
    UniBijection(Carrier carrier, std::vector<Value> forward, std::vector<Value> inverse);

    const Carrier& carrier() const { return carrier_; }
    Value apply(Value x) const;
    Value invert(Value y) const;
    const std::vector<Value>& forward_table() const { return fwd_; }
    const std::vector<Value>& inverse_table() const { return inv_; }

    std::optional<Expr> forward_expr;
    std::optional<Expr> inverse_expr;
    std::optional<IntPoly> zpl_poly;  // polynomial over Z_{p^l} when the map is one
    std::optional<Sexp> spec;         // serializable construction recipe

private:
    Carrier carrier_;
    std::vector<Value> fwd_;
    std::vector<Value> inv_;
};

// z -> z^r on GF(q), gcd(r, q - 1) = 1.
UniBijection perm_power(const Ctx& F, std::uint64_t r);
// z -> sum a_i z^{p^{i-1}}, accepted iff its Z_p-matrix has full rank.
UniBijection perm_linearized(const Ctx& F, std::span<const Value> coeffs);
// z -> z^{p^r} - a z with r | n and a^{sum_{i=1}^{n/r} p^{(i-1)r}} != 1.
UniBijection perm_artin(const Ctx& F, unsigned r, Value a);
// Rebuilds a map from its spec recipe.
UniBijection uni_from_sexp(const Ctx& F, const Sexp& s);

// Permutation polynomials of Z_{p^l} lifting a prescribed permutation a of Z_p.
// Method 1: g(x) = c_1 + c_2 x + ... + c_{p-1} x^{p-2} must not vanish mod p.
UniBijection perm_zpl_method1(std::uint64_t p, unsigned l, std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> c);
IntPoly zpl_method1_poly(std::uint64_t p, std::span<const std::uint64_t> a, std::span<const std::uint64_t> c);

struct Method2Params {
    std::vector<std::uint64_t> lambda;  // lambda_0 .. lambda_{p-1}
    std::uint64_t sigma = 0;
    std::uint64_t c0 = 0;
};
// Method 2: f'(i) + sigma = lambda_i; needs sum lambda = 0, at most p - 1 distinct
// lambda values, and sigma outside them.
UniBijection perm_zpl_method2(std::uint64_t p, unsigned l, std::span<const std::uint64_t> a,
                              const Method2Params& prm);
IntPoly zpl_method2_poly(std::uint64_t p, std::span<const std::uint64_t> a, const Method2Params& prm);

std::vector<std::uint64_t> random_permutation(std::uint64_t p, Rng& rng);
std::vector<std::uint64_t> draw_method1_c(std::uint64_t p, Rng& rng);
Method2Params draw_method2_params(std::uint64_t p, Rng& rng);

// Newton lifting from a root x1 of f(x) = y mod p, doubling precision up to p^l.
std::uint64_t hensel_invert(const IntPoly& f, std::uint64_t p, unsigned l, std::uint64_t y, std::uint64_t x1);
// Same, with the seed found by scanning Z_p.
std::uint64_t hensel_invert(const IntPoly& f, std::uint64_t p, unsigned l, std::uint64_t y);

// eta(x) = a^{g(log_a x)} on H_t = {x : x^t = 1}, a the primitive element of F.
UniBijection subgroup_exp_bijection(const Ctx& F, std::uint64_t t, const IntPoly& g);

// chi(x) = sum_i l_i(x) eta(g_i(x)); g_i maps S_i injectively onto S_{sigma(i)}.
// sigma is 0-based over the classes of P.
UniBijection hybrid_hash_bijection_m1(const Ctx& F, const PartitionOfUnity& P, std::span<const std::size_t> sigma,
                                      std::span<const Expr> transfers, const UniBijection& eta);

// zeta(x) = sum_{i=1}^{k} l_i(h(x)) eta(f_{sigma(i)}(x)) with f_j = f^j, f^rho = id and
// h(x) = g(x, f_1(x), ..., f_{rho-1}(x)) invariant under f. sigma is a permutation of
// 1..rho; the partition P lives on GF(q) and has k <= rho classes.
UniBijection hybrid_hash_bijection_m2(const Ctx& F, const UniBijection& f, std::size_t rho, const Expr& g,
                                      const PartitionOfUnity& P, std::span<const std::size_t> sigma,
                                      const UniBijection& eta);

Expr int_poly_expr(const IntPoly& f);

}  // namespace mvmap
