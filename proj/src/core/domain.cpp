#include "mvmap/domain.hpp"

#include <algorithm>
#include <limits>

namespace mvmap {

DomainSpec::DomainSpec(std::vector<Coord> coords) : coords_(std::move(coords)) {
    for (auto& c : coords_) {
        std::sort(c.subset.begin(), c.subset.end());
        c.subset.erase(std::unique(c.subset.begin(), c.subset.end()), c.subset.end());
    }
}

DomainSpec DomainSpec::uniform(std::size_t m, Kind k) {
    std::vector<Coord> c(m);
    for (auto& x : c) x.kind = k;
    return DomainSpec(std::move(c));
}

DomainSpec DomainSpec::all(std::size_t m) { return uniform(m, Kind::All); }
DomainSpec DomainSpec::units(std::size_t m) { return uniform(m, Kind::Units); }

DomainSpec DomainSpec::subset(std::size_t m, std::vector<Value> values) {
    std::vector<Coord> c(m);
    for (auto& x : c) {
        x.kind = Kind::Subset;
        x.subset = values;
    }
    return DomainSpec(std::move(c));
}

bool DomainSpec::is_full() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Coord& c) { return c.kind == Kind::All; });
}

bool DomainSpec::is_units() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Coord& c) { return c.kind == Kind::Units; });
}

bool DomainSpec::contains(const Ctx& ctx, std::size_t i, Value v) const {
    if (!ctx.contains(v)) return false;
    const Coord& c = coords_[i];
    switch (c.kind) {
        case Kind::All: return true;
        case Kind::Units: return ctx.is_unit(v);
        case Kind::Subset: return std::binary_search(c.subset.begin(), c.subset.end(), v);
    }
    return false;
}

bool DomainSpec::contains(const Ctx& ctx, std::span<const Value> x) const {
    if (x.size() != coords_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!contains(ctx, i, x[i])) return false;
    return true;
}

std::vector<Value> DomainSpec::values(const Ctx& ctx, std::size_t i) const {
    const Coord& c = coords_[i];
    std::vector<Value> out;
    switch (c.kind) {
        case Kind::All:
            out.resize(ctx.size());
            for (Value v = 0; v < ctx.size(); ++v) out[v] = v;
            break;
        case Kind::Units:
            for (Value v = 0; v < ctx.size(); ++v)
                if (ctx.is_unit(v)) out.push_back(v);
            break;
        case Kind::Subset:
            for (auto v : c.subset)
                if (ctx.contains(v)) out.push_back(v);
            break;
    }
    return out;
}

std::uint64_t DomainSpec::point_count(const Ctx& ctx) const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        std::uint64_t k;
        switch (coords_[i].kind) {
            case Kind::All: k = ctx.size(); break;
            case Kind::Units: k = ctx.is_field() ? ctx.size() - 1 : ctx.ring().phi(); break;
            default: k = values(ctx, i).size(); break;
        }
        if (k != 0 && n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
        n *= k;
    }
    return n;
}

DomainSpec DomainSpec::concat(const DomainSpec& other) const {
    std::vector<Coord> c = coords_;
    c.insert(c.end(), other.coords_.begin(), other.coords_.end());
    return DomainSpec(std::move(c));
}

}  // namespace mvmap
