#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvmap/error.hpp"

namespace mvmap {

// GF(p^n). An element is the integer sum c_i * p^i of its coefficient vector
// (c_0, ..., c_{n-1}) over the basis 1, x, ..., x^{n-1}; the same packing is
// used on the command line and in key files.
class Field {
public:
    static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;

    // modulus: n + 1 coefficients, low to high, monic. For n = 1 any monic
    // linear modulus is accepted; the canonical choice is x.
    Field(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus,
          std::uint64_t max_order = kDefaultMaxOrder);

    static Field prime(std::uint64_t p);
    // Uses the lexicographically first monic irreducible of degree n.
    static Field with_default_modulus(std::uint64_t p, unsigned n,
                                      std::uint64_t max_order = kDefaultMaxOrder);

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint64_t order() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    Value primitive() const { return primitive_; }

    bool contains(Value a) const { return a < q_; }
    Value from_int(std::int64_t k) const;

    Value add(Value a, Value b) const;
    Value sub(Value a, Value b) const { return add(a, neg(b)); }
    Value neg(Value a) const;
    Value mul(Value a, Value b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Value inv(Value a) const;
    // 0^0 = 1; negative k requires a unit.
    Value pow(Value a, std::int64_t k) const;
    Value pow_u(Value a, std::uint64_t k) const;

    // Discrete log with respect to primitive().
    std::uint64_t log(Value g) const;
    Value exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

    std::vector<std::uint64_t> coeffs(Value a) const;
    Value pack(std::span<const std::uint64_t> coeffs) const;

    // Schoolbook multiplication modulo the defining polynomial; used to seed the tables.
    Value mul_slow(Value a, Value b) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_; }

private:
    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    Value primitive_ = 1;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

bool is_irreducible_mod_p(std::span<const std::uint64_t> f, std::uint64_t p);
std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned n);

// Smallest primitive element in packed order, found by exhaustive order tests.
Value find_primitive(const Field& F);
// log_a(g) for a primitive a and g != 0.
std::uint64_t discrete_log(const Field& F, Value a, Value g);
Value field_pow(const Field& F, Value x, std::int64_t k);

}  // namespace mvmap
