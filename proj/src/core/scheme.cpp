#include "mvmap/scheme.hpp"

#include "mvmap/modarith.hpp"
#include "mvmap/poly.hpp"

namespace mvmap {

void SchemeParams::validate(const Ctx& ctx) const {
    if (!ctx.is_field()) fail(Errc::InvalidArgument, "key generation needs a field context");
    if (mu == 0) fail(Errc::InvalidArgument, "mu must be at least 1");
    if (direct()) {
        if (L != 0 || kappa != 0) fail(Errc::InvalidArgument, "direct mode needs L = kappa = 0");
        return;
    }
    if (L == 0 || L > lambda) fail(Errc::InvalidArgument, "need 1 <= L <= lambda");
    if (kappa == 0) fail(Errc::InvalidArgument, "kappa must be at least 1");
    if (mu + lambda > 64 || mu + kappa > 64) fail(Errc::InvalidArgument, "dimensions too large");
}

namespace {

void check_domain(const Ctx& ctx, Group g, std::span<const Value> v, std::size_t n, const char* what) {
    if (v.size() != n) fail(Errc::InvalidArgument, std::string(what) + " has " + std::to_string(v.size()) +
                                                       " coordinates, expected " + std::to_string(n));
    if (!group_domain(g, n).contains(ctx, v)) fail(Errc::DomainViolation, std::string(what) + " lies outside G");
}

std::vector<Value> concat(std::span<const Value> a, std::span<const Value> b) {
    std::vector<Value> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<Value> eval_all(const Ctx& ctx, const std::vector<Expr>& es, std::span<const Value> x) {
    std::vector<Value> out;
    out.reserve(es.size());
    for (auto& e : es) out.push_back(eval(e, ctx, x));
    return out;
}

std::vector<Expr> vars(std::size_t from, std::size_t n) {
    std::vector<Expr> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Expr::var(from + i));
    return v;
}

ParametricMap random_diagonal(const Ctx& ctx, std::size_t l, std::size_t m, Group group, bool variable, Rng& rng) {
    std::vector<ParametricMap> parts;
    for (std::size_t i = 0; i < m; ++i) parts.push_back(random_power_map(ctx, l, group, variable, rng));
    return diagonal(std::move(parts));
}

// zeta = sum_i g_i(z_1) phi_i(z) [zeta_i(z; x) + chi_i] over the classes of a power discriminator.
ParametricMap random_assembled(const Ctx& ctx, std::size_t l, std::size_t m, Group group, Rng& rng) {
    const Field& F = ctx.field();
    const std::uint64_t q = F.order();
    std::vector<std::uint64_t> rs;
    for (auto d : modarith::divisors(q - 1))
        if ((q - 1) / d <= 4) rs.push_back(d);
    const std::uint64_t r = rs[rng.uniform(rs.size())];
    const PartitionOfUnity P = poun_from_discriminator(ctx, power_expr(r));
    std::vector<Expr> g, phi, chi;
    std::vector<ParametricMap> zeta;
    for (std::size_t i = 0; i < P.k(); ++i) {
        // Classes outside G never fire on the parameter domain.
        bool meets_group = false;
        for (auto v : P.classes[i]) meets_group = meets_group || group == Group::All || v != 0;
        if (!meets_group) continue;
        g.push_back(P.indicators[i]);
        phi.push_back(random_unit_coeff(ctx, l, group, rng));
        chi.push_back(Expr::constant(rng.uniform(q)));
        zeta.push_back(random_diagonal(ctx, l, m, group, group == Group::Units, rng));
    }
    return assemble_from_partition(ctx, l, std::move(g), std::move(phi), std::move(chi), std::move(zeta), group);
}

std::optional<TriangularScheme> direct_tri(const Ctx& ctx, const SchemeParams& prm, Rng& rng) {
    return random_triangular(ctx, prm.mu, prm.group, rng);
}

}  // namespace

PublicTable make_public(const Ctx& ctx, const SchemeParams& prm, std::size_t arity, std::vector<Expr> polys) {
    PublicTable t;
    t.prm = prm;
    t.arity = arity;
    const DomainSpec d = group_domain(prm.group, arity);
    try {
        std::vector<Expr> out;
        for (auto& e : polys) out.push_back(expand_to_poly(e, ctx, d).to_expr());
        t.polys = std::move(out);
    } catch (const Error& e) {
        if (e.code() != Errc::TooLarge) throw;
        t.polys = std::move(polys);
        t.canonical = false;
    }
    return t;
}

HashTable gen_hash_keys(const Ctx& ctx, const SchemeParams& prm, Rng& rng) {
    prm.validate(ctx);
    HashTable ht;
    ht.prm = prm;
    if (prm.direct()) return ht;
    const std::size_t n = prm.inputs(), free_q = prm.lambda - prm.L;
    const bool units = prm.group == Group::Units;
    for (std::size_t l = 0; l < prm.L; ++l) ht.f.push_back(random_group_valued(ctx, n, prm.group, units, rng));
    for (std::size_t i = 0; i < free_q; ++i) ht.Q.push_back(random_group_valued(ctx, n, prm.group, units, rng));
    // Expression-level inverses are needed in sign mode, so exponents stay constant there.
    ht.eta = random_diagonal(ctx, free_q, prm.L, prm.group, units && !prm.sign, rng);
    std::vector<Expr> repl = ht.Q;
    repl.insert(repl.end(), ht.f.begin(), ht.f.end());
    for (auto& e : ht.eta->forward_exprs(ctx)) ht.Q.push_back(substitute(e, repl));
    if (prm.sign) {
        auto inv = ht.eta->inverse_exprs(ctx);
        if (!inv) fail(Errc::InverseNotExpressible, "eta has no expression-level inverse");
        ht.g = std::move(*inv);
    }
    if (auto bad = check_ht_invariant(ctx, ht)) throw Error(Errc::RetryExhausted, "hash table invariant fails", *bad);
    return ht;
}

std::optional<std::vector<Value>> check_ht_invariant(const Ctx& ctx, const HashTable& ht) {
    const SchemeParams& prm = ht.prm;
    if (prm.direct()) return std::nullopt;
    const std::size_t free_q = prm.lambda - prm.L;
    std::optional<std::vector<Value>> bad;
    for_each_point(ctx, group_domain(prm.group, prm.inputs()), [&](std::span<const Value> x) {
        const auto fv = eval_all(ctx, ht.f, x);
        const auto qv = eval_all(ctx, ht.Q, x);
        std::span<const Value> qs(qv);
        auto back = ht.eta->inverse(ctx, qs.first(free_q), qs.subspan(free_q));
        bool ok = back && *back == fv;
        if (ok && prm.sign) ok = eval_all(ctx, ht.g, qv) == fv;
        if (!ok) bad = std::vector<Value>(x.begin(), x.end());
        return ok;
    });
    return bad;
}

PkcKeys pkc_keygen(const Ctx& ctx, HashTable ht, Rng& rng) {
    const SchemeParams prm = ht.prm;
    if (prm.sign) fail(Errc::InvalidArgument, "hash table was generated for signatures");
    PkcKeys k;
    k.bt.prm = prm;
    if (prm.direct()) {
        k.bt.tri = direct_tri(ctx, prm, rng);
        k.lt = make_public(ctx, prm, prm.mu, k.bt.tri->forward_exprs(ctx));
        k.ht = std::move(ht);
        return k;
    }
    const Field& F = ctx.field();
    const std::size_t nu = prm.nu();
    k.bt.zeta = random_assembled(ctx, prm.L, prm.mu, prm.group, rng);
    std::vector<Expr> Q = ht.Q;
    std::vector<Expr> repl = ht.f;
    for (auto& v : vars(0, prm.mu)) repl.push_back(v);
    for (auto& e : k.bt.zeta->forward_exprs(ctx)) Q.push_back(substitute(e, repl));

    Matrix A;
    std::optional<Matrix> Ainv;
    for (int attempt = 0; attempt < 1000 && !Ainv; ++attempt) {
        A.assign(nu, std::vector<Value>(nu));
        for (auto& row : A)
            for (auto& a : row) a = rng.uniform(F.order());
        Ainv = inverse(F, A);
    }
    if (!Ainv) fail(Errc::RetryExhausted, "no invertible affine map found");
    std::vector<Value> b(nu);
    for (auto& v : b) v = rng.uniform(F.order());
    k.bt.Tinv = *Ainv;
    k.bt.offset = mat_vec(F, *Ainv, b);
    for (auto& v : k.bt.offset) v = F.neg(v);

    std::vector<Expr> P;
    for (std::size_t i = 0; i < nu; ++i) {
        std::vector<Expr> terms;
        for (std::size_t j = 0; j < nu; ++j)
            if (A[i][j]) terms.push_back(A[i][j] == 1 ? Q[j] : Expr::mul({Expr::constant(A[i][j]), Q[j]}));
        terms.push_back(Expr::constant(b[i]));
        P.push_back(Expr::add(std::move(terms)));
    }
    k.lt = make_public(ctx, prm, prm.inputs(), std::move(P));
    k.ht = std::move(ht);
    return k;
}

DsKeys ds_keygen(const Ctx& ctx, HashTable ht, Rng& rng) {
    const SchemeParams prm = ht.prm;
    if (!prm.sign) fail(Errc::InvalidArgument, "hash table was generated for encryption");
    DsKeys k;
    k.st.prm = prm;
    if (prm.direct()) {
        k.st.tri = direct_tri(ctx, prm, rng);
        k.svt = make_public(ctx, prm, prm.mu, k.st.tri->forward_exprs(ctx));
        k.sat = make_public(ctx, prm, prm.inputs(), {});
        k.ht = std::move(ht);
        return k;
    }
    k.st.zeta = random_diagonal(ctx, prm.L, prm.mu, prm.group, false, rng);
    std::vector<Expr> repl = ht.g;
    for (auto& v : vars(prm.lambda, prm.mu)) repl.push_back(v);
    std::vector<Expr> P;
    for (auto& e : k.st.zeta->forward_exprs(ctx)) P.push_back(substitute(e, repl));
    k.svt = make_public(ctx, prm, prm.nu(), std::move(P));
    k.sat = make_public(ctx, prm, prm.inputs(), ht.Q);
    k.ht = std::move(ht);
    return k;
}

PkcKeys pkc_keygen(const Ctx& ctx, const SchemeParams& prm, std::uint64_t seed) {
    Rng rng(seed);
    SchemeParams p = prm;
    p.sign = false;
    return pkc_keygen(ctx, gen_hash_keys(ctx, p, rng), rng);
}

DsKeys ds_keygen(const Ctx& ctx, const SchemeParams& prm, std::uint64_t seed) {
    Rng rng(seed);
    SchemeParams p = prm;
    p.sign = true;
    return ds_keygen(ctx, gen_hash_keys(ctx, p, rng), rng);
}

std::vector<Value> sample_padding(const Ctx& ctx, const SchemeParams& prm, Rng& rng) {
    std::vector<Value> w(prm.kappa);
    const std::uint64_t q = ctx.size();
    for (auto& v : w) v = prm.group == Group::Units ? rng.range(1, q - 1) : rng.uniform(q);
    return w;
}

std::vector<Value> pkc_encrypt(const Ctx& ctx, const PublicTable& lt, std::span<const Value> xi,
                               std::span<const Value> omega) {
    check_domain(ctx, lt.prm.group, xi, lt.prm.mu, "message");
    check_domain(ctx, lt.prm.group, omega, lt.prm.kappa, "padding");
    return eval_all(ctx, lt.polys, concat(xi, omega));
}

std::vector<Value> pkc_decrypt(const Ctx& ctx, const BackTable& bt, const HashTable& ht, std::span<const Value> e) {
    const SchemeParams& prm = bt.prm;
    if (e.size() != prm.nu()) fail(Errc::InvalidArgument, "ciphertext has the wrong length");
    for (auto v : e)
        if (!ctx.contains(v)) fail(Errc::DomainViolation, "ciphertext coordinate outside the field");
    if (prm.direct()) {
        auto x = bt.tri->inverse(ctx, e);
        if (!x) fail(Errc::NotInImage, "ciphertext is not in the image");
        return *x;
    }
    const Field& F = ctx.field();
    auto v = mat_vec(F, bt.Tinv, std::vector<Value>(e.begin(), e.end()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(v[i], bt.offset[i]);
    std::span<const Value> vs(v);
    const std::size_t free_q = prm.lambda - prm.L;
    auto z = ht.eta->inverse(ctx, vs.first(free_q), vs.subspan(free_q, prm.L));
    if (!z) fail(Errc::NotInImage, "ciphertext is not in the image");
    auto xi = bt.zeta->inverse(ctx, *z, vs.subspan(prm.lambda));
    if (!xi || !group_domain(prm.group, prm.mu).contains(ctx, *xi)) fail(Errc::NotInImage, "ciphertext is not in the image");
    return *xi;
}

std::vector<Value> ds_sign(const Ctx& ctx, const SignTable& st, const HashTable& ht, std::span<const Value> xi,
                           std::span<const Value> omega) {
    const SchemeParams& prm = st.prm;
    check_domain(ctx, prm.group, xi, prm.mu, "message");
    check_domain(ctx, prm.group, omega, prm.kappa, "padding");
    if (prm.direct()) {
        auto x = st.tri->inverse(ctx, xi);
        if (!x) fail(Errc::NotInImage, "message is not in the image");
        return *x;
    }
    const auto in = concat(xi, omega);
    const auto z = eval_all(ctx, ht.f, in);
    auto out = eval_all(ctx, ht.Q, in);
    auto tail = st.zeta->inverse(ctx, z, xi);
    if (!tail) fail(Errc::NotInImage, "message is not in the image of zeta");
    out.insert(out.end(), tail->begin(), tail->end());
    return out;
}

std::vector<Value> ds_verify(const Ctx& ctx, const PublicTable& svt, std::span<const Value> e) {
    if (e.size() != svt.arity) fail(Errc::InvalidArgument, "signature has the wrong length");
    for (auto v : e)
        if (!ctx.contains(v)) fail(Errc::DomainViolation, "signature coordinate outside the field");
    return eval_all(ctx, svt.polys, e);
}

bool ds_authenticate(const Ctx& ctx, const PublicTable& sat, std::span<const Value> xi, std::span<const Value> omega,
                     std::span<const Value> e) {
    const SchemeParams& prm = sat.prm;
    check_domain(ctx, prm.group, xi, prm.mu, "message");
    check_domain(ctx, prm.group, omega, prm.kappa, "padding");
    if (e.size() != prm.nu()) fail(Errc::InvalidArgument, "signature has the wrong length");
    const auto s = eval_all(ctx, sat.polys, concat(xi, omega));
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != e[i]) return false;
    return true;
}

}  // namespace mvmap
