#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/domain.hpp"
#include "mvmap/expr.hpp"

namespace mvmap {

inline constexpr std::uint64_t kExpansionBound = std::uint64_t{1} << 20;

// Dense polynomial over GF(q) in m variables, every per-variable degree below q.
// Coefficient of x_0^{e_0} ... x_{m-1}^{e_{m-1}} sits at index sum e_j q^j.
struct DensePoly {
    std::size_t m = 0;
    std::uint64_t q = 0;
    std::vector<Value> coeffs;

    Value eval(const Field& F, std::span<const Value> x) const;
    std::size_t term_count() const;
    // Canonical expression: terms in increasing index order, (c 0) for the zero polynomial.
    Expr to_expr() const;
    bool operator==(const DensePoly&) const = default;
};

// Values on F^m in the same index order -> unique reduced polynomial.
DensePoly interpolate(const Field& F, std::size_t m, std::vector<Value> values);

// Reduced polynomial agreeing with e on all of F^m. Throws DomainNotFull for any
// other domain kind passed through the DomainSpec overload, except that a domain of
// all-units coordinates is accepted and the function is extended by zero off it.
DensePoly expand_to_poly(const Expr& e, const Ctx& ctx, std::size_t m, std::uint64_t bound = kExpansionBound);
DensePoly expand_to_poly(const Expr& e, const Ctx& ctx, const DomainSpec& domain,
                         std::uint64_t bound = kExpansionBound);

}  // namespace mvmap
