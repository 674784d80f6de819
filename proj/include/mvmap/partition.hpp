#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/expr.hpp"
#include "mvmap/rng.hpp"

namespace mvmap {

// Partition of the carrier into the level sets of a discriminating function f,
// with Lagrange indicators
//   l_i(x) = [prod_{j != i} (a_i - a_j)]^{-1} prod_{j != i} (f(x) - a_j)
// over the distinct values a_1 < ... < a_k of f. Pairwise differences of the a_i
// are units, so the l_i exist also over Z_{p^l}.
struct PartitionOfUnity {
    Expr discriminator;                        // univariate, in v0
    std::vector<Value> codomain;               // a_i, increasing
    std::vector<std::vector<Value>> classes;   // S_i = f^{-1}(a_i), increasing
    std::vector<std::size_t> class_of;         // element code -> class index
    std::vector<Expr> indicators;              // l_i as expressions in v0
    std::vector<std::vector<Value>> tables;    // l_i as value tables over the carrier

    std::size_t k() const { return codomain.size(); }
};

PartitionOfUnity poun_from_discriminator(const Ctx& ctx, const Expr& f);
// h(x) = x^{s p^{l-1}} over Z_{p^l}; requires s | p - 1 and yields 1 + (p-1)/s classes.
PartitionOfUnity poun_zpl(const Ctx& zpl, std::uint64_t s);
// Explicit partition of GF(q); the discriminator interpolates the class label.
PartitionOfUnity poun_from_classes(const Ctx& field, const std::vector<std::vector<Value>>& classes);

// g_i = l_i o h for a discriminating expression h over E^m.
std::vector<Expr> compose_indicators(const PartitionOfUnity& P, const Expr& h);

// Expression for z -> f(z)^{-1}, built as sum_i a_i^{-1} l_i(f(z)) over the values of f.
// Throws NotUnitValued when f vanishes somewhere on the domain.
Expr inverse_of_nonvanishing(const Ctx& ctx, const Expr& f, const DomainSpec& domain);

// Discriminator families.
Expr power_expr(std::uint64_t r);
// sum_i a_i z^{p^{i-1}}
Expr linearized_expr(const Field& F, std::span<const Value> coeffs);
// Matrix of z -> sum a_i z^{p^{i-1}} over Z_p in the basis 1, x, ..., x^{n-1} (columns = images).
std::vector<std::vector<Value>> linearized_matrix(const Field& F, std::span<const Value> coeffs);
std::size_t linearized_rank(const Field& F, std::span<const Value> coeffs);
// Inverse direction: the unique linearized coefficients realizing a Z_p-matrix.
std::vector<Value> linearized_from_matrix(const Field& F, const std::vector<std::vector<Value>>& M);
std::vector<Value> random_linearized_of_rank(const Field& F, std::size_t r, Rng& rng);

}  // namespace mvmap
