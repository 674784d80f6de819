#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/linalg.hpp"
#include "mvmap/parametric.hpp"
#include "mvmap/rng.hpp"

namespace mvmap {

// mu plain coordinates, kappa padding coordinates, L hash keys, lambda hash
// values; nu = mu + lambda output coordinates. lambda = L = kappa = 0 selects
// direct mode, where one bijection of G^mu carries the whole scheme.
struct SchemeParams {
    std::size_t mu = 1, kappa = 1, L = 1, lambda = 1;
    bool sign = false;
    Group group = Group::Units;

    std::size_t nu() const { return mu + lambda; }
    std::size_t inputs() const { return mu + kappa; }
    bool direct() const { return lambda == 0; }
    void validate(const Ctx& ctx) const;
    bool operator==(const SchemeParams&) const = default;
};

// Hash table: f_1..f_L and Q_1..Q_lambda over (x, omega), eta with lambda - L
// parameters and arity L, and in sign mode g_1..g_L over lambda variables with
// f = g o Q pointwise.
struct HashTable {
    SchemeParams prm;
    std::vector<Expr> f, Q, g;
    std::optional<ParametricMap> eta;
};

// Decryption table: zeta and the inverse affine map v = M e + o (or the
// triangular bijection in direct mode).
struct BackTable {
    SchemeParams prm;
    std::optional<ParametricMap> zeta;
    Matrix Tinv;
    std::vector<Value> offset;
    std::optional<TriangularScheme> tri;
};

// Signing table: zeta, a parametric bijection of G^mu (or the triangular map).
struct SignTable {
    SchemeParams prm;
    std::optional<ParametricMap> zeta;
    std::optional<TriangularScheme> tri;
};

// Published (or verifier-held) polynomials. canonical is false when expansion
// was out of reach and the expression DAG is kept instead.
struct PublicTable {
    SchemeParams prm;
    std::size_t arity = 0;
    std::vector<Expr> polys;
    bool canonical = true;
};

struct PkcKeys {
    HashTable ht;
    BackTable bt;
    PublicTable lt;
};

struct DsKeys {
    HashTable ht;
    SignTable st;
    PublicTable svt;
    PublicTable sat;
};

HashTable gen_hash_keys(const Ctx& ctx, const SchemeParams& prm, Rng& rng);
PkcKeys pkc_keygen(const Ctx& ctx, HashTable ht, Rng& rng);
DsKeys ds_keygen(const Ctx& ctx, HashTable ht, Rng& rng);
// Full key generation from one seed: hash keys first, then the scheme tables.
PkcKeys pkc_keygen(const Ctx& ctx, const SchemeParams& prm, std::uint64_t seed);
DsKeys ds_keygen(const Ctx& ctx, const SchemeParams& prm, std::uint64_t seed);

std::vector<Value> sample_padding(const Ctx& ctx, const SchemeParams& prm, Rng& rng);

std::vector<Value> pkc_encrypt(const Ctx& ctx, const PublicTable& lt, std::span<const Value> xi,
                               std::span<const Value> omega);
// Throws NotInImage when e is not a ciphertext.
std::vector<Value> pkc_decrypt(const Ctx& ctx, const BackTable& bt, const HashTable& ht, std::span<const Value> e);
std::vector<Value> ds_sign(const Ctx& ctx, const SignTable& st, const HashTable& ht, std::span<const Value> xi,
                           std::span<const Value> omega);
std::vector<Value> ds_verify(const Ctx& ctx, const PublicTable& svt, std::span<const Value> e);
bool ds_authenticate(const Ctx& ctx, const PublicTable& sat, std::span<const Value> xi, std::span<const Value> omega,
                     std::span<const Value> e);

// F(x, omega) = eta^{-1}(Q_1..Q_{lambda-L}; Q_{lambda-L+1}..Q_lambda), and in sign
// mode f = g o Q, on every point of G^{mu+kappa}. Returns the first failing point.
std::optional<std::vector<Value>> check_ht_invariant(const Ctx& ctx, const HashTable& ht);

// Expands each expression over the group domain when within reach.
PublicTable make_public(const Ctx& ctx, const SchemeParams& prm, std::size_t arity, std::vector<Expr> polys);

}  // namespace mvmap
