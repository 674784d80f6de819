#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/error.hpp"

namespace mvmap {

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 22;

// Per-coordinate domain: the whole carrier, its units, or an explicit subset.
class DomainSpec {
public:
    enum class Kind { All, Units, Subset };
    struct Coord {
        Kind kind = Kind::All;
        std::vector<Value> subset;  // sorted, only for Subset
    };

    DomainSpec() = default;
    explicit DomainSpec(std::vector<Coord> coords);
    static DomainSpec all(std::size_t m);
    static DomainSpec units(std::size_t m);
    static DomainSpec uniform(std::size_t m, Kind k);
    static DomainSpec subset(std::size_t m, std::vector<Value> values);

    std::size_t arity() const { return coords_.size(); }
    const Coord& coord(std::size_t i) const { return coords_[i]; }
    bool is_full() const;
    bool is_units() const;

    bool contains(const Ctx& ctx, std::size_t i, Value v) const;
    bool contains(const Ctx& ctx, std::span<const Value> x) const;
    std::vector<Value> values(const Ctx& ctx, std::size_t i) const;
    // Saturates at UINT64_MAX.
    std::uint64_t point_count(const Ctx& ctx) const;

    DomainSpec concat(const DomainSpec& other) const;

private:
    std::vector<Coord> coords_;
};

// Visits every point of the domain in odometer order (coordinate 0 varies fastest).
// fn returns false to stop early. Throws TooLarge above cap.
template <class Fn>
void for_each_point(const Ctx& ctx, const DomainSpec& d, Fn&& fn, std::uint64_t cap = kEnumerationCap) {
    const std::uint64_t count = d.point_count(ctx);
    if (count > cap) fail(Errc::TooLarge, "domain has " + std::to_string(count) + " points, above the enumeration cap");
    const std::size_t m = d.arity();
    std::vector<std::vector<Value>> vals(m);
    for (std::size_t i = 0; i < m; ++i) {
        vals[i] = d.values(ctx, i);
        if (vals[i].empty()) return;
    }
    std::vector<std::size_t> idx(m, 0);
    std::vector<Value> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = vals[i][0];
    for (;;) {
        if (!fn(std::span<const Value>(x))) return;
        std::size_t i = 0;
        while (i < m) {
            if (++idx[i] < vals[i].size()) {
                x[i] = vals[i][idx[i]];
                break;
            }
            idx[i] = 0;
            x[i] = vals[i][0];
            ++i;
        }
        if (i == m) return;
    }
}

}  // namespace mvmap
