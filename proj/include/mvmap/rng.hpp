#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mvmap {

// Seeded generator whose outputs are identical on every platform:
// std::mt19937_64 is fully specified, and bounded draws avoid the
// implementation-defined standard distributions.
class Rng {
public:
    static constexpr const char* kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n); n > 0.
    std::uint64_t uniform(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x < threshold);
        return x % n;
    }

    // Uniform in [lo, hi].
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + uniform(hi - lo + 1); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(i)]);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace mvmap
