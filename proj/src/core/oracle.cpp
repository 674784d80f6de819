#include "mvmap/oracle.hpp"

#include <map>

namespace mvmap {

namespace {

struct Scan {
    std::map<std::vector<Value>, std::uint64_t> first_index;  // image -> first preimage index
    std::vector<std::vector<Value>> points;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
};

Scan scan(const Ctx& ctx, const DomainSpec& domain, const VecMap& f, std::uint64_t cap,
          const std::function<void(std::span<const Value>, const std::vector<Value>&)>& visit) {
    Scan s;
    for_each_point(
        ctx, domain,
        [&](std::span<const Value> x) {
            const std::uint64_t idx = s.points.size();
            s.points.emplace_back(x.begin(), x.end());
            auto y = f(x);
            if (visit) visit(x, y);
            auto [it, fresh] = s.first_index.emplace(std::move(y), idx);
            // The earliest pair for a given image is (first, second preimage);
            // later preimages of the same image can only be larger.
            if (!fresh) {
                std::pair<std::uint64_t, std::uint64_t> cand{it->second, idx};
                if (!s.best || cand < *s.best) s.best = cand;
            }
            return true;
        },
        cap);
    return s;
}

}  // namespace

std::optional<Collision> exhaustive_injectivity(const Ctx& ctx, const DomainSpec& domain, const VecMap& f,
                                                std::uint64_t cap) {
    Scan s = scan(ctx, domain, f, cap, {});
    if (!s.best) return std::nullopt;
    return Collision{s.points[s.best->first], s.points[s.best->second]};
}

BijectivityReport exhaustive_bijectivity(const Ctx& ctx, const DomainSpec& domain, const DomainSpec& codomain,
                                         const VecMap& f, std::uint64_t cap) {
    BijectivityReport r;
    Scan s = scan(ctx, domain, f, cap, [&](std::span<const Value> x, const std::vector<Value>& y) {
        if (!r.stray && (y.size() != codomain.arity() || !codomain.contains(ctx, y))) r.stray = std::vector<Value>(x.begin(), x.end());
    });
    if (s.best) r.collision = Collision{s.points[s.best->first], s.points[s.best->second]};
    if (!r.collision && !r.stray) {
        for_each_point(
            ctx, codomain,
            [&](std::span<const Value> y) {
                if (!s.first_index.count(std::vector<Value>(y.begin(), y.end()))) {
                    r.missed = std::vector<Value>(y.begin(), y.end());
                    return false;
                }
                return true;
            },
            cap);
    }
    r.ok = !r.collision && !r.stray && !r.missed;
    return r;
}

std::vector<std::vector<Value>> exhaustive_preimage(const Ctx& ctx, const DomainSpec& domain, const VecMap& f,
                                                    std::span<const Value> y, std::uint64_t cap) {
    std::vector<std::vector<Value>> out;
    const std::vector<Value> target(y.begin(), y.end());
    for_each_point(
        ctx, domain,
        [&](std::span<const Value> x) {
            if (f(x) == target) out.emplace_back(x.begin(), x.end());
            return true;
        },
        cap);
    return out;
}

std::vector<std::vector<Value>> solve_small_system(const Ctx& ctx, std::span<const Expr> exprs,
                                                   std::span<const Value> targets, const DomainSpec& domain,
                                                   std::uint64_t cap) {
    if (exprs.size() != targets.size()) fail(Errc::InvalidArgument, "one target per equation");
    std::vector<std::vector<Value>> out;
    for_each_point(
        ctx, domain,
        [&](std::span<const Value> x) {
            for (std::size_t i = 0; i < exprs.size(); ++i)
                if (eval(exprs[i], ctx, x) != targets[i]) return true;
            out.emplace_back(x.begin(), x.end());
            return true;
        },
        cap);
    return out;
}

}  // namespace mvmap
