#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mvmap::modarith {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) { return a >= m - b ? a - (m - b) : a + b; }

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : m - (b - a); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 gcd(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1. Modulus 1 maps everything to 0.
inline std::optional<u64> invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 qt = r / nr;
        __int128 tmp = t - qt * nt;
        t = nt;
        nt = tmp;
        tmp = r - qt * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

// Reduces a signed integer into [0, m).
inline u64 reduce_signed(std::int64_t k, u64 m) {
    __int128 r = static_cast<__int128>(k) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Trial division; intended for the small moduli this library works with.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace mvmap::modarith
