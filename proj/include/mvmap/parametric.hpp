#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/expr.hpp"
#include "mvmap/partition.hpp"
#include "mvmap/rng.hpp"
#include "mvmap/sexp.hpp"
#include "mvmap/unimap.hpp"

namespace mvmap {

// The group G in which messages and parameters live: GF(q)* or all of GF(q).
enum class Group { Units, All };

const char* group_name(Group g);
Group group_from_name(const std::string& s);
DomainSpec group_domain(Group g, std::size_t m);

// Parametric injective map zeta(z; x): for every parameter z in G^l, x -> zeta(z; x)
// is injective on G^m. In expressions the parameters are v0 .. v{l-1} and the
// inputs follow as v{l} .. v{l+m-1}.
class ParametricMap {
public:
    enum class Kind { Power, Diagonal, Assembled };

    Kind kind() const { return kind_; }
    std::size_t params() const { return l_; }
    std::size_t arity() const { return m_; }
    Group group() const { return group_; }

    std::vector<Value> forward(const Ctx& ctx, std::span<const Value> z, std::span<const Value> x) const;
    // nullopt when y has no preimage for this z.
    std::optional<std::vector<Value>> inverse(const Ctx& ctx, std::span<const Value> z,
                                              std::span<const Value> y) const;

    std::vector<Expr> forward_exprs(const Ctx& ctx) const;
    // Expression form of the inverse (in z then y); nullopt if some exponent depends on z.
    std::optional<std::vector<Expr>> inverse_exprs(const Ctx& ctx) const;

    Sexp to_sexp() const;
    static ParametricMap from_sexp(const Ctx& ctx, const Sexp& s);

    // Power: coefficient f(z) and exponent g(log z).
    const Expr& coeff() const { return coeff_; }
    const Expo& exponent() const { return expo_; }
    const std::vector<ParametricMap>& parts() const { return parts_; }

    friend ParametricMap parametric_power(const Ctx&, std::size_t, Expr, Expo, Group);
    friend ParametricMap diagonal(std::vector<ParametricMap>);
    friend ParametricMap assemble_from_partition(const Ctx&, std::size_t, std::vector<Expr>, std::vector<Expr>,
                                                 std::vector<Expr>, std::vector<ParametricMap>, Group);

private:
    Kind kind_ = Kind::Power;
    std::size_t l_ = 0;
    std::size_t m_ = 0;
    Group group_ = Group::Units;
    // Power
    Expr coeff_;
    Expo expo_;
    // Diagonal: parts_ are the components. Assembled: parts_ are the zeta_i.
    std::vector<ParametricMap> parts_;
    std::vector<Expr> ind_, phi_, chi_;

    std::uint64_t exponent_value(const Ctx& ctx, std::span<const Value> z) const;
};

// eta(z; x) = f(z) x^{g(log z)} on G. f must be a unit on G^l and gcd(g(t), q - 1) = 1
// for every t. A non-constant g (or an f using logs) requires G = F*.
ParametricMap parametric_power(const Ctx& F, std::size_t l, Expr coeff, Expo exponent, Group group);
// Componentwise product of maps sharing their parameters.
ParametricMap diagonal(std::vector<ParametricMap> parts);
// eta = sum_i g_i phi_i [zeta_i + chi_i], where g_1 .. g_k partition the parameter space.
ParametricMap assemble_from_partition(const Ctx& F, std::size_t l, std::vector<Expr> g, std::vector<Expr> phi,
                                      std::vector<Expr> chi, std::vector<ParametricMap> zeta, Group group);

// Triangular bijection of G^m built from univariate bijections f_i, g_i and
// parametric maps h_i with m - 1 parameters:
//   zeta_i = h_i(zeta_{i+1}, ..., zeta_m, x_1, ..., x_{i-1}; f_i(x_i)),  eta_i = g_i(zeta_i).
class TriangularScheme {
public:
    TriangularScheme(const Ctx& ctx, std::vector<UniBijection> f, std::vector<UniBijection> g,
                     std::vector<ParametricMap> h, Group group);

    std::size_t arity() const { return f_.size(); }
    Group group() const { return group_; }
    std::vector<Value> forward(const Ctx& ctx, std::span<const Value> x) const;
    std::optional<std::vector<Value>> inverse(const Ctx& ctx, std::span<const Value> y) const;
    std::vector<Expr> forward_exprs(const Ctx& ctx) const;

    Sexp to_sexp() const;
    static TriangularScheme from_sexp(const Ctx& ctx, const Sexp& s);

private:
    std::vector<UniBijection> f_, g_;
    std::vector<ParametricMap> h_;
    Group group_;
};

// Random generators drawing only from the seeded Rng.
Expr random_group_valued(const Ctx& F, std::size_t arity, Group group, bool allow_exponent_level, Rng& rng);
Expr random_unit_coeff(const Ctx& F, std::size_t l, Group group, Rng& rng);
Expo random_unit_exponent(const Ctx& F, std::size_t l, bool variable, Rng& rng);
ParametricMap random_power_map(const Ctx& F, std::size_t l, Group group, bool variable_exponent, Rng& rng);
TriangularScheme random_triangular(const Ctx& F, std::size_t m, Group group, Rng& rng);

// Method 2 for (F*)^m: Phi(x)_j = x_{perm[j]}^{exps[j]}, a bijection of order rho;
// hash h(x) = g(x, Phi(x), ..., Phi^{rho-1}(x)) over m * rho variables.
std::size_t phi_order(const Ctx& F, std::span<const std::size_t> perm, std::span<const std::uint64_t> exps);
Expr symmetric_product_hash(std::size_t m, std::size_t rho, std::span<const std::uint64_t> s);

class HybridMvMap {
public:
    HybridMvMap(const Ctx& F, std::vector<std::size_t> perm, std::vector<std::uint64_t> exps, Expr hash,
                PartitionOfUnity P, std::vector<std::size_t> sigma, std::optional<TriangularScheme> eta);

    std::size_t arity() const { return perm_.size(); }
    std::size_t rho() const { return rho_; }
    std::vector<Value> phi_power(const Ctx& F, std::span<const Value> x, std::size_t j) const;
    Value hash(const Ctx& F, std::span<const Value> x) const;
    std::vector<Value> forward(const Ctx& F, std::span<const Value> x) const;
    std::optional<std::vector<Value>> inverse(const Ctx& F, std::span<const Value> y) const;

private:
    std::vector<std::size_t> perm_;
    std::vector<std::uint64_t> exps_;
    std::size_t rho_;
    Expr hash_;
    PartitionOfUnity P_;
    std::vector<std::size_t> sigma_;
    std::optional<TriangularScheme> eta_;
};

}  // namespace mvmap
