#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/domain.hpp"
#include "mvmap/expr.hpp"

namespace mvmap {

// Brute-force reference checks. They only enumerate and compare; none of them
// relies on the algebra of the maps under test.
using VecMap = std::function<std::vector<Value>(std::span<const Value>)>;

struct Collision {
    std::vector<Value> x, x2;
};

// nullopt when injective on the domain; otherwise the colliding pair that comes
// first in enumeration order (compared by the first point, then the second).
std::optional<Collision> exhaustive_injectivity(const Ctx& ctx, const DomainSpec& domain, const VecMap& f,
                                                std::uint64_t cap = kEnumerationCap);

struct BijectivityReport {
    bool ok = false;
    std::optional<Collision> collision;       // two points with one image
    std::optional<std::vector<Value>> stray;  // a point mapped outside the codomain
    std::optional<std::vector<Value>> missed; // a codomain point never hit
};

// Bijectivity from the domain onto the codomain.
BijectivityReport exhaustive_bijectivity(const Ctx& ctx, const DomainSpec& domain, const DomainSpec& codomain,
                                         const VecMap& f, std::uint64_t cap = kEnumerationCap);

// Every x in the domain with f(x) = y, in enumeration order.
std::vector<std::vector<Value>> exhaustive_preimage(const Ctx& ctx, const DomainSpec& domain, const VecMap& f,
                                                    std::span<const Value> y, std::uint64_t cap = kEnumerationCap);

// Every point of the domain at which e_i evaluates to target_i for all i.
std::vector<std::vector<Value>> solve_small_system(const Ctx& ctx, std::span<const Expr> exprs,
                                                   std::span<const Value> targets, const DomainSpec& domain,
                                                   std::uint64_t cap = kEnumerationCap);

}  // namespace mvmap
