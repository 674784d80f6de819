#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mvmap/modarith.hpp"

namespace mvmap {

// Integer polynomial, coefficients low to high, interpreted modulo a caller-supplied m.
struct IntPoly {
    std::vector<std::uint64_t> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<std::uint64_t> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    bool is_zero() const { return c.empty(); }

    std::uint64_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

    std::uint64_t eval(std::uint64_t x, std::uint64_t m) const {
        std::uint64_t r = 0;
        x %= m;
        for (std::size_t i = c.size(); i-- > 0;)
            r = modarith::addmod(modarith::mulmod(r, x, m), c[i] % m, m);
        return r;
    }

    IntPoly derivative(std::uint64_t m) const {
        IntPoly d;
        for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(modarith::mulmod(c[i] % m, i % m, m));
        d.trim();
        return d;
    }

    IntPoly reduced(std::uint64_t m) const {
        IntPoly r;
        for (auto v : c) r.c.push_back(v % m);
        r.trim();
        return r;
    }

    static IntPoly add(const IntPoly& a, const IntPoly& b, std::uint64_t m) {
        IntPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = modarith::addmod(a.coeff(i) % m, b.coeff(i) % m, m);
        r.trim();
        return r;
    }

    static IntPoly mul(const IntPoly& a, const IntPoly& b, std::uint64_t m) {
        if (a.is_zero() || b.is_zero()) return {};
        IntPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = modarith::addmod(r.c[i + j], modarith::mulmod(a.c[i] % m, b.c[j] % m, m), m);
        r.trim();
        return r;
    }

    static IntPoly scale(const IntPoly& a, std::uint64_t s, std::uint64_t m) {
        IntPoly r;
        for (auto v : a.c) r.c.push_back(modarith::mulmod(v % m, s % m, m));
        r.trim();
        return r;
    }

    static IntPoly monomial(std::uint64_t coeff, std::size_t deg) {
        IntPoly r;
        r.c.assign(deg + 1, 0);
        r.c[deg] = coeff;
        r.trim();
        return r;
    }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
        return s + "]";
    }
};

}  // namespace mvmap
