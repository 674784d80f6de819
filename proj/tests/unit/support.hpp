#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "doctest.h"
#include "mvmap/ctx.hpp"
#include "mvmap/error.hpp"

namespace mvmap::test {

inline Ctx gf(std::uint64_t p, unsigned n = 1) {
    return Ctx(std::make_shared<const Field>(Field::with_default_modulus(p, n)));
}

inline Ctx zmod(std::uint64_t p, unsigned l) {
    return Ctx(std::make_shared<const RingCtx>(RingCtx::prime_power(p, l)));
}

// Runs fn and returns the error code it throws; fails the test if nothing is thrown.
inline Errc error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an mvmap::Error");
    return Errc::Io;
}

// Naive power by repeated multiplication, independent of the log tables.
inline Value slow_pow(const Field& F, Value a, std::uint64_t k) {
    Value r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = F.mul_slow(r, a);
    return r;
}

}  // namespace mvmap::test
