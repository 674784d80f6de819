#include "mvmap/unimap.hpp"

#include <algorithm>
#include <set>

#include "mvmap/linalg.hpp"
#include "mvmap/modarith.hpp"

namespace mvmap {

using modarith::addmod;
using modarith::mulmod;
using modarith::submod;

// ---------------------------------------------------------------- carrier / table core

Carrier Carrier::make(CarrierKind kind, std::uint64_t ambient, std::vector<Value> elements) {
    Carrier c;
    c.kind = kind;
    c.ambient = ambient;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    c.member.assign(ambient, 0);
    for (auto v : elements) {
        if (v >= ambient) fail(Errc::InvalidArgument, "carrier element out of range");
        c.member[v] = 1;
    }
    c.elements = std::move(elements);
    return c;
}

Carrier Carrier::whole(CarrierKind kind, std::uint64_t n) {
    std::vector<Value> e(n);
    for (Value v = 0; v < n; ++v) e[v] = v;
    return make(kind, n, std::move(e));
}

Carrier Carrier::field_units(std::uint64_t q) {
    std::vector<Value> e;
    for (Value v = 1; v < q; ++v) e.push_back(v);
    return make(CarrierKind::FieldUnits, q, std::move(e));
}

UniBijection::UniBijection(Carrier carrier, std::vector<Value> forward) : carrier_(std::move(carrier)) {
    if (forward.size() != carrier_.ambient) fail(Errc::InvalidArgument, "forward table has the wrong size");
    fwd_.assign(carrier_.ambient, kNone);
    inv_.assign(carrier_.ambient, kNone);
    for (auto x : carrier_.elements) {
        const Value y = forward[x];
        if (!carrier_.contains(y))
            throw Error(Errc::NotPermutation, "image leaves the carrier", {x, y});
        if (inv_[y] != kNone) throw Error(Errc::NotPermutation, "map is not injective", {inv_[y], x});
        fwd_[x] = y;
        inv_[y] = x;
    }
}

UniBijection::UniBijection(Carrier carrier, std::vector<Value> forward, std::vector<Value> inverse)
    : UniBijection(std::move(carrier), std::move(forward)) {
    if (inverse.size() != carrier_.ambient) fail(Errc::InvalidArgument, "inverse table has the wrong size");
    for (auto y : carrier_.elements)
        if (inverse[y] != inv_[y]) throw Error(Errc::NotPermutation, "inverse table disagrees with forward", {y});
}

Value UniBijection::apply(Value x) const {
    if (!carrier_.contains(x)) fail(Errc::DomainViolation, "argument outside the carrier");
    return fwd_[x];
}

Value UniBijection::invert(Value y) const {
    if (!carrier_.contains(y)) fail(Errc::DomainViolation, "argument outside the carrier");
    return inv_[y];
}

namespace {

std::vector<Value> table_of(const Ctx& ctx, const Expr& e, const Carrier& c) {
    std::vector<Value> t(c.ambient, UniBijection::kNone);
    for (auto x : c.elements) {
        const Value a[1] = {x};
        t[x] = eval(e, ctx, a);
    }
    return t;
}

Sexp spec_list(std::initializer_list<std::string> items) {
    Sexp s = Sexp::make_list();
    for (auto& i : items) s.list.push_back(Sexp::make_atom(i));
    return s;
}

}  // namespace

// ---------------------------------------------------------------- field permutations

UniBijection perm_power(const Ctx& ctx, std::uint64_t r) {
    const Field& F = ctx.field();
    const std::uint64_t m = F.order() - 1;
    if (r == 0 || modarith::gcd(r % m == 0 ? m : r % m, m) != 1)
        fail(Errc::GcdNotOne, "gcd(r, q - 1) != 1");
    std::uint64_t rinv = m == 1 ? 1 : *modarith::invmod(r % m, m);
    if (rinv == 0) rinv = m;
    Carrier c = Carrier::whole(CarrierKind::Field, F.order());
    Expr fe = power_expr(r);
    UniBijection b(c, table_of(ctx, fe, c));
    b.forward_expr = fe;
    b.inverse_expr = power_expr(rinv);
    b.spec = spec_list({"perm-power", std::to_string(r)});
    return b;
}

UniBijection perm_linearized(const Ctx& ctx, std::span<const Value> coeffs) {
    const Field& F = ctx.field();
    const unsigned n = F.degree();
    if (coeffs.size() != n) fail(Errc::InvalidArgument, "need exactly n linearized coefficients");
    for (auto a : coeffs)
        if (!F.contains(a)) fail(Errc::InvalidArgument, "coefficient outside the field");
    const Field Fp = Field::prime(F.characteristic());
    auto M = linearized_matrix(F, coeffs);
    auto Minv = inverse(Fp, M);
    if (!Minv) fail(Errc::Singular, "linearized map has rank " + std::to_string(rank(Fp, M)) + " < " + std::to_string(n));
    auto inv_coeffs = linearized_from_matrix(F, *Minv);
    Carrier c = Carrier::whole(CarrierKind::Field, F.order());
    Expr fe = linearized_expr(F, coeffs);
    Expr ie = linearized_expr(F, inv_coeffs);
    UniBijection b(c, table_of(ctx, fe, c), table_of(ctx, ie, c));
    b.forward_expr = fe;
    b.inverse_expr = ie;
    Sexp s = spec_list({"perm-linearized"});
    for (auto a : coeffs) s.list.push_back(Sexp::make_atom(std::to_string(a)));
    b.spec = s;
    return b;
}

UniBijection perm_artin(const Ctx& ctx, unsigned r, Value a) {
    const Field& F = ctx.field();
    const unsigned n = F.degree();
    const std::uint64_t p = F.characteristic();
    if (r == 0 || n % r != 0) fail(Errc::InvalidArgument, "r must divide n");
    if (!F.contains(a)) fail(Errc::InvalidArgument, "a outside the field");
    if (a != 0) {
        // a^{sum_{i=1}^{n/r} p^{(i-1) r}} computed as a product of Frobenius images.
        Value prod = 1, cur = a;
        const std::uint64_t pr = modarith::ipow(p, r);
        for (unsigned i = 0; i < n / r; ++i) {
            prod = F.mul(prod, cur);
            cur = F.pow_u(cur, pr);
        }
        if (prod == 1) fail(Errc::ConditionFails, "a^{(p^n - 1)/(p^r - 1)} = 1, the map is not a permutation");
    }
    const std::uint64_t pr = modarith::ipow(p, r);
    Expr fe = a == 0 ? power_expr(pr)
                     : Expr::add({power_expr(pr), Expr::mul({Expr::constant(F.neg(a)), Expr::var(0)})});
    Carrier c = Carrier::whole(CarrierKind::Field, F.order());
    UniBijection b(c, table_of(ctx, fe, c));
    b.forward_expr = fe;
    b.spec = spec_list({"perm-artin", std::to_string(r), std::to_string(a)});
    return b;
}

UniBijection uni_from_sexp(const Ctx& F, const Sexp& s) {
    if (s.head_is("perm-power") && s.list.size() == 2) return perm_power(F, s.list[1].as_uint());
    if (s.head_is("perm-artin") && s.list.size() == 3)
        return perm_artin(F, static_cast<unsigned>(s.list[1].as_uint()), s.list[2].as_uint());
    if (s.head_is("perm-linearized")) {
        std::vector<Value> a;
        for (std::size_t i = 1; i < s.list.size(); ++i) a.push_back(s.list[i].as_uint());
        return perm_linearized(F, a);
    }
    fail(Errc::Parse, "unknown permutation recipe " + to_string(s));
}

// ---------------------------------------------------------------- Z_{p^l}

Expr int_poly_expr(const IntPoly& f) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        if (i == 0) terms.push_back(Expr::constant(f.c[i]));
        else if (i == 1) terms.push_back(Expr::mul({Expr::constant(f.c[i]), Expr::var(0)}));
        else terms.push_back(Expr::mul({Expr::constant(f.c[i]), power_expr(i)}));
    }
    if (terms.empty()) return Expr::constant(0);
    return Expr::add(std::move(terms));
}

namespace {

void check_prime_perm(std::uint64_t p, std::span<const std::uint64_t> a) {
    if (!modarith::is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (a.size() != p) fail(Errc::InvalidArgument, "permutation must list p values");
    std::vector<bool> seen(p, false);
    for (auto v : a) {
        if (v >= p || seen[v]) fail(Errc::NotPermutation, "a is not a permutation of Z_p");
        seen[v] = true;
    }
}

// l_i(x) = -prod_{j != i} (x - j), the Lagrange basis of Z_p, with coefficients mod m.
IntPoly lagrange_basis(std::uint64_t p, std::uint64_t i, std::uint64_t m) {
    IntPoly r({1});
    for (std::uint64_t j = 0; j < p; ++j) {
        if (j == i) continue;
        r = IntPoly::mul(r, IntPoly({submod(0, j % m, m), 1}), m);
    }
    return IntPoly::scale(r, m - 1, m);
}

std::uint64_t pow_p(std::uint64_t p, unsigned l) { return modarith::ipow(p, l); }

UniBijection zpl_bijection(const IntPoly& f, std::uint64_t p, unsigned l, const char* tag) {
    const std::uint64_t M = pow_p(p, l);
    RingCtx R = RingCtx::prime_power(p, l);
    if (!ring_bijective_check(R, f)) fail(Errc::DerivativeVanishes, std::string(tag) + ": lifting criterion fails");
    Carrier c = Carrier::whole(CarrierKind::ResidueRing, M);
    std::vector<Value> fwd(M), inv(M);
    for (Value x = 0; x < M; ++x) fwd[x] = f.eval(x, M);
    for (Value y = 0; y < M; ++y) inv[y] = hensel_invert(f, p, l, y);
    UniBijection b(c, std::move(fwd), std::move(inv));
    b.zpl_poly = f;
    b.forward_expr = int_poly_expr(f);
    return b;
}

}  // namespace

IntPoly zpl_method1_poly(std::uint64_t p, std::span<const std::uint64_t> a, std::span<const std::uint64_t> c) {
    check_prime_perm(p, a);
    if (c.size() != p - 1) fail(Errc::InvalidArgument, "need c_1 .. c_{p-1}");
    for (auto v : c)
        if (v >= p) fail(Errc::InvalidArgument, "c_i must lie in Z_p");
    IntPoly g(std::vector<std::uint64_t>(c.begin(), c.end()));
    for (std::uint64_t x = 0; x < p; ++x)
        if (g.eval(x, p) == 0) throw Error(Errc::GVanishes, "g vanishes mod p", {x});
    // b = Lagrange interpolant of a over Z_p.
    IntPoly b;
    for (std::uint64_t i = 0; i < p; ++i) b = IntPoly::add(b, IntPoly::scale(lagrange_basis(p, i, p), a[i], p), p);
    std::vector<std::uint64_t> f(p * (p - 1) + 1, 0);
    f[0] = b.coeff(0);
    for (std::uint64_t i = 1; i < p; ++i) {
        const std::uint64_t rho = mulmod(*modarith::invmod(i, p), c[i - 1], p);
        const std::uint64_t sigma = submod(b.coeff(i), rho, p);
        f[i] = addmod(f[i], rho, p);
        f[i * p] = addmod(f[i * p], sigma, p);
    }
    return IntPoly(std::move(f));
}

UniBijection perm_zpl_method1(std::uint64_t p, unsigned l, std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> c) {
    if (l == 0) fail(Errc::InvalidArgument, "l must be positive");
    auto f = zpl_method1_poly(p, a, c);
    for (std::uint64_t x = 0; x < p; ++x)
        if (f.eval(x, p) != a[x]) fail(Errc::InvalidArgument, "method 1 polynomial does not reduce to a");
    return zpl_bijection(f, p, l, "method 1");
}

IntPoly zpl_method2_poly(std::uint64_t p, std::span<const std::uint64_t> a, const Method2Params& prm) {
    check_prime_perm(p, a);
    if (prm.lambda.size() != p) fail(Errc::BadLambda, "need lambda_0 .. lambda_{p-1}");
    std::uint64_t sum = 0;
    std::set<std::uint64_t> values;
    for (auto v : prm.lambda) {
        if (v >= p) fail(Errc::BadLambda, "lambda_i must lie in Z_p");
        sum = addmod(sum, v, p);
        values.insert(v);
    }
    if (sum != 0) fail(Errc::BadLambda, "lambda values must sum to zero");
    if (values.size() > p - 1) fail(Errc::BadLambda, "lambda takes all p values");
    if (prm.sigma >= p || values.count(prm.sigma)) fail(Errc::SigmaInLambda, "sigma must avoid the lambda values");
    if (prm.c0 >= p) fail(Errc::InvalidArgument, "c_0 must lie in Z_p");

    // c_j - c_0 = j (sum_{i != j} a_i (j - i)^{-1} - lambda_j)
    std::vector<std::uint64_t> cc(p), bb(p);
    cc[0] = prm.c0;
    bb[0] = a[0];
    for (std::uint64_t j = 1; j < p; ++j) {
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i < p; ++i)
            if (i != j) s = addmod(s, mulmod(a[i], *modarith::invmod(submod(j, i, p), p), p), p);
        cc[j] = addmod(prm.c0, mulmod(j, submod(s, prm.lambda[j], p), p), p);
        bb[j] = submod(a[j], cc[j], p);
    }
    // f(x) = sum_i (b_i - sigma i + c_i x^{p-1}) l_i(x) + sigma x^p, coefficients in Z_p.
    IntPoly f = IntPoly::monomial(prm.sigma, p);
    for (std::uint64_t i = 0; i < p; ++i) {
        IntPoly li = lagrange_basis(p, i, p);
        IntPoly coef = IntPoly::add(IntPoly({submod(bb[i], mulmod(prm.sigma, i, p), p)}),
                                    IntPoly::monomial(cc[i], p - 1), p);
        f = IntPoly::add(f, IntPoly::mul(coef, li, p), p);
    }
    auto d = f.derivative(p);
    for (std::uint64_t x = 0; x < p; ++x) {
        if (f.eval(x, p) != a[x]) fail(Errc::InvalidArgument, "method 2 polynomial does not reduce to a");
        if (addmod(d.eval(x, p), prm.sigma, p) != prm.lambda[x])
            fail(Errc::DerivativeVanishes, "derivative condition f'(i) + sigma = lambda_i fails");
    }
    return f;
}

UniBijection perm_zpl_method2(std::uint64_t p, unsigned l, std::span<const std::uint64_t> a,
                              const Method2Params& prm) {
    if (l == 0) fail(Errc::InvalidArgument, "l must be positive");
    return zpl_bijection(zpl_method2_poly(p, a, prm), p, l, "method 2");
}

std::vector<std::uint64_t> random_permutation(std::uint64_t p, Rng& rng) {
    std::vector<std::uint64_t> a(p);
    for (std::uint64_t i = 0; i < p; ++i) a[i] = i;
    rng.shuffle(a);
    return a;
}

std::vector<std::uint64_t> draw_method1_c(std::uint64_t p, Rng& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<std::uint64_t> c(p - 1);
        for (auto& v : c) v = rng.uniform(p);
        IntPoly g(c);
        bool ok = true;
        for (std::uint64_t x = 0; x < p && ok; ++x) ok = g.eval(x, p) != 0;
        if (ok) return c;
    }
    fail(Errc::RetryExhausted, "no nonvanishing g found");
}

Method2Params draw_method2_params(std::uint64_t p, Rng& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Method2Params m;
        m.lambda.resize(p);
        std::uint64_t sum = 0;
        for (std::uint64_t i = 1; i < p; ++i) {
            m.lambda[i] = rng.uniform(p);
            sum = addmod(sum, m.lambda[i], p);
        }
        m.lambda[0] = submod(0, sum, p);
        std::set<std::uint64_t> vals(m.lambda.begin(), m.lambda.end());
        if (vals.size() > p - 1) continue;
        std::vector<std::uint64_t> free;
        for (std::uint64_t s = 0; s < p; ++s)
            if (!vals.count(s)) free.push_back(s);
        m.sigma = free[rng.uniform(free.size())];
        m.c0 = rng.uniform(p);
        return m;
    }
    fail(Errc::RetryExhausted, "no admissible lambda found");
}

std::uint64_t hensel_invert(const IntPoly& f, std::uint64_t p, unsigned l, std::uint64_t y, std::uint64_t x1) {
    const std::uint64_t M = pow_p(p, l);
    if (y >= M) fail(Errc::ResidueOutOfRange, "target outside Z_{p^l}");
    if (x1 >= p || f.eval(x1, p) != y % p) fail(Errc::BadSeed, "seed is not a root modulo p");
    const IntPoly d = f.derivative(M);
    if (d.eval(x1, p) == 0) fail(Errc::DerivativeVanishes, "f'(x1) vanishes modulo p");
    std::uint64_t x = x1;
    unsigned s = 1;
    while (s < l) {
        const unsigned r = std::min(2 * s, l);
        const std::uint64_t m = pow_p(p, r);
        const std::uint64_t fx = f.eval(x, m);
        const std::uint64_t inv = *modarith::invmod(d.eval(x, m), m);
        x = addmod(x % m, mulmod(inv, submod(y % m, fx, m), m), m);
        s = r;
    }
    return x % M;
}

std::uint64_t hensel_invert(const IntPoly& f, std::uint64_t p, unsigned l, std::uint64_t y) {
    for (std::uint64_t x1 = 0; x1 < p; ++x1)
        if (f.eval(x1, p) == y % p) return hensel_invert(f, p, l, y, x1);
    fail(Errc::NotInImage, "no root modulo p");
}

// ---------------------------------------------------------------- subgroup / hybrid hashing

UniBijection subgroup_exp_bijection(const Ctx& ctx, std::uint64_t t, const IntPoly& g) {
    const Field& F = ctx.field();
    const std::uint64_t m = F.order() - 1;
    if (t == 0 || m % t != 0) fail(Errc::InvalidArgument, "t must divide q - 1");
    const std::uint64_t d = m / t;
    std::vector<Value> H;
    for (std::uint64_t j = 0; j < t; ++j) H.push_back(F.exp(d * j));
    std::vector<bool> hit(t, false);
    for (std::uint64_t j = 0; j < t; ++j) {
        const std::uint64_t v = g.eval(d * j, m);
        if (v % d != 0 || hit[v / d]) throw Error(Errc::GNotBijectiveOnCoset, "g does not permute the logs of H_t", {j});
        hit[v / d] = true;
    }
    Carrier c = Carrier::make(CarrierKind::Subgroup, F.order(), H);
    std::vector<Expo> terms;
    for (std::size_t k = 0; k < g.c.size(); ++k) {
        if (g.c[k] == 0) continue;
        const auto coef = Expo::constant(static_cast<std::int64_t>(g.c[k] % m));
        if (k == 0) terms.push_back(coef);
        else if (k == 1) terms.push_back(Expo::mul({coef, Expo::log_var(0)}));
        else terms.push_back(Expo::mul({coef, Expo::pow(Expo::log_var(0), k)}));
    }
    Expo ex = terms.empty() ? Expo::constant(0) : Expo::add(std::move(terms));
    Expr fe = Expr::pow_var(Expr::constant(F.primitive()), ex);
    UniBijection b(c, table_of(ctx, fe, c));
    b.forward_expr = fe;
    return b;
}

UniBijection hybrid_hash_bijection_m1(const Ctx& ctx, const PartitionOfUnity& P, std::span<const std::size_t> sigma,
                                      std::span<const Expr> transfers, const UniBijection& eta) {
    const Field& F = ctx.field();
    const std::uint64_t q = F.order();
    const std::size_t k = P.k();
    if (sigma.size() != k || transfers.size() != k) fail(Errc::InvalidArgument, "sigma and transfers need k entries");
    {
        std::vector<bool> seen(k, false);
        for (auto s : sigma) {
            if (s >= k || seen[s]) fail(Errc::InvalidArgument, "sigma is not a permutation of the classes");
            seen[s] = true;
        }
    }
    if (eta.carrier().kind != CarrierKind::Field || eta.carrier().ambient != q)
        fail(Errc::InvalidArgument, "eta must permute the whole field");
    std::vector<std::vector<Value>> g(k, std::vector<Value>(q));
    for (std::size_t i = 0; i < k; ++i)
        for (Value x = 0; x < q; ++x) {
            const Value a[1] = {x};
            g[i][x] = eval(transfers[i], ctx, a);
        }
    // Inverse transfers f_i on S_{sigma(i)}, zero elsewhere.
    std::vector<std::vector<Value>> finv(k, std::vector<Value>(q, 0));
    for (std::size_t i = 0; i < k; ++i) {
        const auto& Si = P.classes[i];
        const auto& Ts = P.classes[sigma[i]];
        if (Si.size() != Ts.size()) throw Error(Errc::SizesMismatch, "|S_i| != |S_sigma(i)|", {i});
        std::vector<bool> hit(q, false);
        for (auto x : Si) {
            const Value y = g[i][x];
            if (P.class_of[y] != sigma[i] || hit[y]) throw Error(Errc::TransferNotBijective, "g_i does not map S_i onto S_sigma(i)", {i, x});
            hit[y] = true;
            finv[i][y] = x;
        }
    }
    std::vector<Value> fwd(q), inv(q);
    for (Value x = 0; x < q; ++x) {
        Value acc = 0;
        for (std::size_t i = 0; i < k; ++i) acc = F.add(acc, F.mul(P.tables[i][x], eta.apply(g[i][x])));
        fwd[x] = acc;
    }
    for (Value y = 0; y < q; ++y) {
        const Value w = eta.invert(y);
        Value acc = 0;
        for (std::size_t i = 0; i < k; ++i) acc = F.add(acc, F.mul(P.tables[sigma[i]][w], finv[i][w]));
        inv[y] = acc;
    }
    UniBijection b(Carrier::whole(CarrierKind::Field, q), std::move(fwd), std::move(inv));
    if (eta.forward_expr) {
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < k; ++i) {
            const Expr repl[1] = {transfers[i]};
            terms.push_back(Expr::mul({P.indicators[i], substitute(*eta.forward_expr, repl)}));
        }
        b.forward_expr = Expr::add(std::move(terms));
    }
    return b;
}

UniBijection hybrid_hash_bijection_m2(const Ctx& ctx, const UniBijection& f, std::size_t rho, const Expr& g,
                                      const PartitionOfUnity& P, std::span<const std::size_t> sigma,
                                      const UniBijection& eta) {
    const Field& F = ctx.field();
    const Carrier& G = f.carrier();
    if (eta.carrier().ambient != G.ambient || eta.carrier().elements != G.elements)
        fail(Errc::InvalidArgument, "f and eta must share a carrier");
    if (rho == 0) fail(Errc::OrderWrong, "rho must be positive");
    if (P.class_of.size() != F.order()) fail(Errc::InvalidArgument, "partition must live on the field");
    const std::size_t k = P.k();
    if (k > rho) fail(Errc::InvalidArgument, "partition has more classes than rho");
    if (sigma.size() != rho) fail(Errc::InvalidArgument, "sigma must permute 1..rho");
    {
        std::vector<bool> seen(rho + 1, false);
        for (auto s : sigma) {
            if (s == 0 || s > rho || seen[s]) fail(Errc::InvalidArgument, "sigma must permute 1..rho");
            seen[s] = true;
        }
    }
    // iter[j][x] = f^j(x), j = 0..rho.
    std::vector<std::vector<Value>> iter(rho + 1, std::vector<Value>(G.ambient, UniBijection::kNone));
    for (auto x : G.elements) iter[0][x] = x;
    for (std::size_t j = 1; j <= rho; ++j)
        for (auto x : G.elements) iter[j][x] = f.apply(iter[j - 1][x]);
    for (auto x : G.elements)
        if (iter[rho][x] != x) throw Error(Errc::OrderWrong, "f^rho is not the identity", {x});

    std::vector<Value> h(G.ambient, UniBijection::kNone);
    std::vector<Value> args(rho);
    for (auto x : G.elements) {
        for (std::size_t j = 0; j < rho; ++j) args[j] = iter[j][x];
        h[x] = eval(g, ctx, args);
        if (!F.contains(h[x])) fail(Errc::InvalidArgument, "hash leaves the field");
    }
    for (auto x : G.elements)
        if (h[f.apply(x)] != h[x]) throw Error(Errc::HashNotInvariant, "h(f(x)) != h(x)", {x});

    std::vector<Value> fwd(G.ambient, UniBijection::kNone), inv(G.ambient, UniBijection::kNone);
    for (auto x : G.elements) {
        Value acc = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const Value l = P.tables[i][h[x]];
            if (l) acc = F.add(acc, F.mul(l, eta.apply(iter[sigma[i] % rho][x])));
        }
        fwd[x] = acc;
    }
    // f^{-1}_j = f^{rho - j}
    for (auto y : G.elements) {
        const Value w = eta.invert(y);
        Value acc = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const Value l = P.tables[i][h[w]];
            if (l) acc = F.add(acc, F.mul(l, iter[(rho - sigma[i] % rho) % rho][w]));
        }
        inv[y] = acc;
    }
    return UniBijection(G, std::move(fwd), std::move(inv));
}

}  // namespace mvmap
