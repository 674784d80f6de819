// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every check recomputes its expected values with plain loops in this file; the
// library is only the object under test.

#include <chrono>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <unistd.h>

#include "mvmap/ctx.hpp"
#include "mvmap/error.hpp"
#include "mvmap/expr.hpp"
#include "mvmap/int_poly.hpp"
#include "mvmap/modarith.hpp"
#include "mvmap/oracle.hpp"
#include "mvmap/parametric.hpp"
#include "mvmap/partition.hpp"
#include "mvmap/ring.hpp"
#include "mvmap/rng.hpp"
#include "mvmap/scheme.hpp"
#include "mvmap/unimap.hpp"

#ifndef MVMAP_CLI_PATH
#define MVMAP_CLI_PATH "mvmap"
#endif

using namespace mvmap;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects failures; only the first few messages are kept for the report.
struct Tally {
    std::uint64_t checks = 0, failures = 0;
    std::string first;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (cond) return;
        if (failures++ == 0) first = what;
    }
    // Same, building the message only on failure.
    template <class Msg>
        requires std::invocable<Msg>
    void expect(bool cond, Msg&& what) {
        ++checks;
        if (cond) return;
        if (failures++ == 0) first = what();
    }
    Outcome outcome(std::string summary) const {
        if (failures) return {false, std::to_string(failures) + " of " + std::to_string(checks) + " checks failed; first: " + first};
        return {true, std::to_string(checks) + " checks, " + summary};
    }
};

std::string join(std::span<const Value> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Ctx gf(std::uint64_t p, unsigned n = 1) {
    return Ctx(std::make_shared<const Field>(Field::with_default_modulus(p, n)));
}

Ctx zpl(std::uint64_t p, unsigned l) { return Ctx(std::make_shared<const RingCtx>(RingCtx::prime_power(p, l))); }

std::vector<Value> eval_each(const Ctx& F, const std::vector<Expr>& es, std::span<const Value> x) {
    std::vector<Value> out;
    for (auto& e : es) out.push_back(eval(e, F, x));
    return out;
}

const SchemeParams kRef{2, 1, 1, 2, false, Group::Units};

// Visits every (xi, omega) of G^mu x G^kappa.
template <class Fn>
void each_input(const Ctx& F, const SchemeParams& prm, Fn fn) {
    for_each_point(F, group_domain(prm.group, prm.inputs()), [&](std::span<const Value> in) {
        fn(in.first(prm.mu), in.subspan(prm.mu));
        return true;
    });
}

std::vector<Value> concat(std::span<const Value> a, std::span<const Value> b) {
    std::vector<Value> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return v;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------

Outcome pkc_correctness() {
    const auto t0 = Clock::now();
    const Ctx F = gf(7);
    const auto k = pkc_keygen(F, kRef, 42);
    Tally t;
    std::size_t n = 0;
    each_input(F, kRef, [&](auto xi, auto om) {
        const auto e = pkc_encrypt(F, k.lt, xi, om);
        t.expect(e.size() == kRef.nu(), "ciphertext length");
        const auto back = pkc_decrypt(F, k.bt, k.ht, e);
        t.expect(back == std::vector<Value>(xi.begin(), xi.end()),
                 "decrypt(encrypt(" + join(xi) + "; " + join(om) + ")) = " + join(back));
        ++n;
    });
    t.expect(n == 216, "tuple count " + std::to_string(n));
    const double s = seconds_since(t0);
    t.expect(s < 5.0, "runtime " + std::to_string(s) + " s");
    return t.outcome(std::to_string(n) + " tuples including keygen in " + std::to_string(s) + " s");
}

Outcome ds_correctness() {
    const auto t0 = Clock::now();
    const Ctx F = gf(7);
    SchemeParams prm = kRef;
    prm.sign = true;
    const auto k = ds_keygen(F, prm, 42);
    Tally t;
    std::size_t n = 0;
    each_input(F, prm, [&](auto xi, auto om) {
        const auto sig = ds_sign(F, k.st, k.ht, xi, om);
        t.expect(sig.size() == prm.nu(), "signature length");
        const auto rec = ds_verify(F, k.svt, sig);
        t.expect(rec == std::vector<Value>(xi.begin(), xi.end()), "verify(sign(" + join(xi) + ")) = " + join(rec));
        t.expect(ds_authenticate(F, k.sat, xi, om, sig), "authenticate rejected " + join(xi) + "; " + join(om));
        ++n;
    });
    t.expect(n == 216, "tuple count " + std::to_string(n));
    const double s = seconds_since(t0);
    t.expect(s < 5.0, "runtime " + std::to_string(s) + " s");
    return t.outcome(std::to_string(n) + " tuples including keygen in " + std::to_string(s) + " s");
}

// F = eta^{-1}(Q_1..Q_{lambda-L}; Q_{lambda-L+1}..Q_lambda), with eta^{-1} found
// by enumerating G^L rather than through the stored inverse.
Outcome ht_invariant() {
    const Ctx F = gf(7);
    Tally t;
    std::size_t keys = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto k = pkc_keygen(F, kRef, seed);
        const HashTable& ht = k.ht;
        if (!ht.eta) {
            t.expect(false, "seed " + std::to_string(seed) + " has no eta");
            continue;
        }
        const std::size_t npar = kRef.lambda - kRef.L;
        t.expect(ht.eta->params() == npar && ht.eta->arity() == kRef.L, "eta shape");
        ++keys;
        each_input(F, kRef, [&](auto xi, auto om) {
            const auto in = concat(xi, om);
            const auto fv = eval_each(F, ht.f, in);
            const auto qv = eval_each(F, ht.Q, in);
            const std::span<const Value> z(qv.data(), npar), y(qv.data() + npar, kRef.L);
            std::vector<std::vector<Value>> pre;
            for_each_point(F, group_domain(kRef.group, kRef.L), [&](std::span<const Value> x) {
                const auto img = ht.eta->forward(F, z, x);
                if (std::equal(img.begin(), img.end(), y.begin(), y.end())) pre.emplace_back(x.begin(), x.end());
                return true;
            });
            t.expect(pre.size() == 1 && pre[0] == fv, "seed " + std::to_string(seed) + " at " + join(in) + ": F = " +
                                                          join(fv) + ", preimages " + std::to_string(pre.size()));
        });
    }
    return t.outcome(std::to_string(keys) + " keygens x 216 points");
}

// ---------------------------------------------------------------------------

// Reference arithmetic for the permutation families: schoolbook products only.
struct Slow {
    const Field& F;
    Value pow(Value a, std::uint64_t k) const {
        Value r = 1;
        for (std::uint64_t i = 0; i < k; ++i) r = F.mul_slow(r, a);
        return r;
    }
};

bool is_bijective(std::uint64_t q, const std::function<Value(Value)>& f) {
    std::vector<char> hit(q, 0);
    for (Value x = 0; x < q; ++x) {
        const Value y = f(x);
        if (y >= q || hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

// Accepted maps must reproduce the formula and invert correctly.
void check_table(Tally& t, const UniBijection& b, std::uint64_t q, const std::vector<Value>& formula,
                 const std::string& what, const Ctx& F) {
    for (Value x = 0; x < q; ++x) {
        t.expect(b.apply(x) == formula[x], [&] { return what + " table at " + std::to_string(x); });
        t.expect(b.invert(formula[x]) == x, [&] { return what + " inverse at " + std::to_string(x); });
        if (b.inverse_expr) {
            const Value y[1] = {formula[x]};
            t.expect(eval(*b.inverse_expr, F, y) == x, [&] { return what + " inverse expression at " + std::to_string(x); });
        }
    }
}

// Returns true when the constructor accepted, false when it threw `expected`.
template <class Fn>
bool accepted(Tally& t, Errc expected, const std::string& what, Fn build) {
    try {
        build();
        return true;
    } catch (const Error& e) {
        t.expect(e.code() == expected, what + " threw " + e.what());
        return false;
    }
}

Outcome permutation_families() {
    const auto t0 = Clock::now();
    Tally t;
    std::size_t lin = 0, art = 0, pw = 0;
    const std::vector<std::pair<std::uint64_t, unsigned>> fields{{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}};
    for (auto [p, n] : fields) {
        const Ctx F = gf(p, n);
        const Field& E = F.field();
        const Slow S{E};
        const std::uint64_t q = F.size();
        const std::string tag = "GF(" + std::to_string(q) + ")";
        std::vector<std::vector<Value>> frob(n, std::vector<Value>(q));  // z^{p^i}
        for (unsigned i = 0; i < n; ++i)
            for (Value z = 0; z < q; ++z) frob[i][z] = S.pow(z, modarith::ipow(p, i));

        // Linearized: every coefficient vector in GF(q)^n.
        std::vector<Value> co(n, 0);
        for (std::uint64_t code = 0; code < modarith::ipow(q, n); ++code) {
            std::uint64_t c = code;
            for (unsigned i = 0; i < n; ++i, c /= q) co[i] = c % q;
            std::vector<Value> img(q);
            for (Value z = 0; z < q; ++z) {
                Value s = 0;
                for (unsigned i = 0; i < n; ++i) s = E.add(s, E.mul_slow(co[i], frob[i][z]));
                img[z] = s;
            }
            const bool bij = is_bijective(q, [&](Value z) { return img[z]; });
            const std::string what = tag + " linearized (" + join(co) + ")";
            std::optional<UniBijection> b;
            const bool acc = accepted(t, Errc::Singular, what, [&] { b.emplace(perm_linearized(F, co)); });
            t.expect(acc == bij, what + (bij ? " rejected" : " accepted"));
            if (acc && bij) check_table(t, *b, q, img, what, F);
            ++lin;
        }

        // z^{p^r} - a z: r | n and a^{(p^n - 1)/(p^r - 1)} != 1; r outside the divisors is rejected.
        for (unsigned r = 1; r <= n + 1; ++r)
            for (Value a = 0; a < q; ++a) {
                const std::string what = tag + " artin r=" + std::to_string(r) + " a=" + std::to_string(a);
                std::optional<UniBijection> b;
                if (n % r != 0) {
                    t.expect(!accepted(t, Errc::InvalidArgument, what, [&] { b.emplace(perm_artin(F, r, a)); }),
                             what + " accepted");
                    ++art;
                    continue;
                }
                const std::uint64_t pr = modarith::ipow(p, r);
                const bool cond = S.pow(a, (q - 1) / (pr - 1)) != 1;
                std::vector<Value> img(q);
                for (Value z = 0; z < q; ++z) img[z] = E.sub(S.pow(z, pr), E.mul_slow(a, z));
                const bool bij = is_bijective(q, [&](Value z) { return img[z]; });
                const bool acc = accepted(t, Errc::ConditionFails, what, [&] { b.emplace(perm_artin(F, r, a)); });
                t.expect(cond == bij, what + ": condition and bijectivity disagree");
                t.expect(acc == bij, what + (bij ? " rejected" : " accepted"));
                if (acc && bij) check_table(t, *b, q, img, what, F);
                ++art;
            }

        // z^r for r in [0, 2(q-1)], accepted iff gcd(r, q - 1) = 1.
        for (std::uint64_t r = 0; r <= 2 * (q - 1); ++r) {
            const std::string what = tag + " power r=" + std::to_string(r);
            std::vector<Value> img(q);
            for (Value z = 0; z < q; ++z) img[z] = S.pow(z, r);
            const bool bij = is_bijective(q, [&](Value z) { return img[z]; });
            t.expect(bij == (std::gcd(r, q - 1) == 1), what + ": gcd rule disagrees with bijectivity");
            std::optional<UniBijection> b;
            const bool acc = accepted(t, Errc::GcdNotOne, what, [&] { b.emplace(perm_power(F, r)); });
            t.expect(acc == bij, what + (bij ? " rejected" : " accepted"));
            if (acc && bij) check_table(t, *b, q, img, what, F);
            ++pw;
        }
    }
    const double s = seconds_since(t0);
    t.expect(s < 10.0, "runtime " + std::to_string(s) + " s");
    return t.outcome(std::to_string(lin) + " linearized, " + std::to_string(art) + " artin, " + std::to_string(pw) +
                     " power parameter sets in " + std::to_string(s) + " s");
}

// ---------------------------------------------------------------------------

std::uint64_t horner(const IntPoly& f, std::uint64_t x, std::uint64_t m) {
    std::uint64_t r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = (r * x + f.c[i] % m) % m;
    return r;
}

std::uint64_t derivative_at(const IntPoly& f, std::uint64_t x, std::uint64_t m) {
    std::uint64_t r = 0, xp = 1;
    for (std::size_t i = 1; i < f.c.size(); ++i) {
        r = (r + (f.c[i] % m) * (i % m) % m * xp) % m;
        xp = xp * x % m;
    }
    return r;
}

UniBijection draw_lift(std::uint64_t p, unsigned l, bool method1, Rng& rng, std::vector<std::uint64_t>& a) {
    a = random_permutation(p, rng);
    if (method1) {
        const auto c = draw_method1_c(p, rng);
        return perm_zpl_method1(p, l, a, c);
    }
    return perm_zpl_method2(p, l, a, draw_method2_params(p, rng));
}

Outcome zpl_methods() {
    Tally t;
    std::size_t built = 0;
    Rng rng(5150);
    for (std::uint64_t p : {3u, 5u})
        for (unsigned l : {2u, 3u})
            for (bool m1 : {true, false})
                for (int trial = 0; trial < 50; ++trial) {
                    std::vector<std::uint64_t> a;
                    const auto b = draw_lift(p, l, m1, rng, a);
                    const std::uint64_t M = modarith::ipow(p, l);
                    const std::string what = std::string(m1 ? "method 1" : "method 2") + " p=" + std::to_string(p) +
                                             " l=" + std::to_string(l) + " trial " + std::to_string(trial);
                    ++built;
                    if (!b.zpl_poly) {
                        t.expect(false, what + " has no polynomial");
                        continue;
                    }
                    const IntPoly& f = *b.zpl_poly;
                    for (std::uint64_t i = 0; i < p; ++i) t.expect(horner(f, i, p) == a[i], what + ": f(i) != a_i");
                    std::vector<char> hit(M, 0);
                    for (std::uint64_t x = 0; x < M; ++x) {
                        t.expect(derivative_at(f, x, p) != 0, what + ": f' vanishes at " + std::to_string(x));
                        const std::uint64_t y = horner(f, x, M);
                        t.expect(!hit[y], what + ": collision at " + std::to_string(x));
                        hit[y] = 1;
                        t.expect(b.apply(x) == y, what + ": table differs at " + std::to_string(x));
                    }
                }
    return t.outcome(std::to_string(built) + " lifts");
}

Outcome hensel_vs_preimage() {
    Tally t;
    std::size_t maps = 0;
    Rng rng(8128);
    for (auto [p, l] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 3}, {5, 3}}) {
        const Ctx R = zpl(p, l);
        const std::uint64_t M = R.size();
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::uint64_t> a;
            const auto b = draw_lift(p, l, trial % 2 == 0, rng, a);
            const IntPoly f = *b.zpl_poly;
            const VecMap fm = [&](std::span<const Value> x) { return std::vector<Value>{horner(f, x[0], M)}; };
            for (std::uint64_t y = 0; y < M; ++y) {
                const Value target[1] = {y};
                const auto pre = exhaustive_preimage(R, DomainSpec::all(1), fm, target);
                std::uint64_t h = ~std::uint64_t{0};
                try {
                    h = hensel_invert(f, p, l, y);
                } catch (const Error& e) {
                    t.expect(false, "Z_" + std::to_string(M) + " y=" + std::to_string(y) + " threw " + e.what());
                    continue;
                }
                t.expect(pre.size() == 1 && pre[0][0] == h,
                         "Z_" + std::to_string(M) + " trial " + std::to_string(trial) + " y=" + std::to_string(y));
            }
            ++maps;
        }
    }
    return t.outcome(std::to_string(maps) + " maps, every y");
}

// ---------------------------------------------------------------------------

// Whole-carrier evaluation of univariate expressions on precomputed operation
// tables; independent of the library evaluator.
class VectorEval {
public:
    explicit VectorEval(const Ctx& ctx) : ctx_(ctx), n_(ctx.size()), add_(n_ * n_), mul_(n_ * n_) {
        for (Value a = 0; a < n_; ++a)
            for (Value b = 0; b < n_; ++b) {
                add_[a * n_ + b] = static_cast<std::uint16_t>(ctx.add(a, b));
                mul_[a * n_ + b] = static_cast<std::uint16_t>(ctx.mul(a, b));
            }
    }

    using Vec = std::vector<std::uint16_t>;

    Vec run(const Expr& e) {
        memo_.clear();
        return go(e);
    }

private:
    const Ctx& ctx_;
    std::uint64_t n_;
    std::vector<std::uint16_t> add_, mul_;
    std::unordered_map<const void*, Vec> memo_;

    std::uint16_t m(std::uint16_t a, std::uint16_t b) const { return mul_[a * n_ + b]; }

    // References into memo_ stay valid: unordered_map never moves its nodes.
    const Vec& go(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        const auto& nd = e.node();
        Vec out(n_);
        switch (nd.op) {
            case Op::Const: std::fill(out.begin(), out.end(), static_cast<std::uint16_t>(nd.value)); break;
            case Op::Var:
                if (nd.var != 0) throw std::runtime_error("indicator uses a variable other than v0");
                std::iota(out.begin(), out.end(), std::uint16_t{0});
                break;
            case Op::Add:
            case Op::Mul: {
                const auto& tab = nd.op == Op::Add ? add_ : mul_;
                std::fill(out.begin(), out.end(), nd.op == Op::Add ? 0 : static_cast<std::uint16_t>(ctx_.from_int(1)));
                for (auto& k : nd.kids) {
                    const Vec& v = go(k);
                    for (std::uint64_t x = 0; x < n_; ++x) out[x] = tab[out[x] * n_ + v[x]];
                }
                break;
            }
            case Op::Pow: {
                const Vec& b = go(nd.kids[0]);
                for (std::uint64_t x = 0; x < n_; ++x) {
                    std::uint16_t r = static_cast<std::uint16_t>(ctx_.from_int(1)), s = b[x];
                    for (std::uint64_t k = nd.exponent; k; k >>= 1) {
                        if (k & 1) r = m(r, s);
                        s = m(s, s);
                    }
                    out[x] = r;
                }
                break;
            }
            default: throw std::runtime_error("unexpected node in an indicator");
        }
        return memo_.emplace(e.id(), std::move(out)).first->second;
    }
};

// Sum l_i = 1 and l_i l_j = 0 (i != j) at every point, from the indicator
// expressions; classes must be the level sets of the discriminator.
void check_partition(Tally& t, const Ctx& ctx, const PartitionOfUnity& P, const std::string& what) {
    VectorEval ve(ctx);
    const std::uint64_t n = ctx.size();
    const Value one = ctx.from_int(1);
    const auto disc = ve.run(P.discriminator);
    std::map<Value, std::vector<Value>> level;
    for (Value x = 0; x < n; ++x) level[disc[x]].push_back(x);
    std::vector<std::vector<Value>> expect_classes;
    std::vector<Value> expect_codomain;
    for (auto& [v, cls] : level) {
        expect_codomain.push_back(v);
        expect_classes.push_back(cls);
    }
    t.expect(P.codomain == expect_codomain && P.classes == expect_classes, what + ": classes are not the level sets");
    t.expect(P.indicators.size() == P.k() && P.tables.size() == P.k(), what + ": indicator count");

    std::vector<Value> sum(n, 0);
    std::vector<std::vector<std::pair<std::size_t, Value>>> nonzero(n);
    for (std::size_t i = 0; i < P.indicators.size(); ++i) {
        const auto li = ve.run(P.indicators[i]);
        for (Value x = 0; x < n; ++x) {
            sum[x] = ctx.add(sum[x], li[x]);
            if (li[x] != 0) nonzero[x].emplace_back(i, li[x]);
            if (i < P.tables.size()) t.expect(P.tables[i][x] == li[x], [&] { return what + ": table differs from expression"; });
        }
    }
    for (Value x = 0; x < n; ++x) {
        t.expect(sum[x] == one, [&] { return what + ": sum of indicators at " + std::to_string(x) + " is " + std::to_string(sum[x]); });
        // A zero factor makes l_i l_j vanish, so only pairs of nonzero values need a product.
        bool orth = true;
        for (std::size_t a = 0; a < nonzero[x].size(); ++a)
            for (std::size_t b = a + 1; b < nonzero[x].size(); ++b)
                orth = orth && ctx.mul(nonzero[x][a].second, nonzero[x][b].second) == 0;
        t.expect(orth, [&] { return what + ": two indicators overlap at " + std::to_string(x); });
    }
}

Outcome partitions() {
    const auto t0 = Clock::now();
    Tally t;
    std::size_t built = 0, carriers = 0;
    // Every Z_{p^l} with p^l <= 512 and every s | p - 1.
    for (std::uint64_t p = 2; p <= 512; ++p) {
        if (!modarith::is_prime(p)) continue;
        for (unsigned l = 1; modarith::ipow(p, l) <= 512; ++l) {
            const Ctx R = zpl(p, l);
            const std::uint64_t M = R.size(), e1 = M / p;
            ++carriers;
            for (std::uint64_t s : modarith::divisors(p - 1)) {
                const std::string what = "Z_" + std::to_string(M) + " s=" + std::to_string(s);
                const auto P = poun_zpl(R, s);
                std::set<std::uint64_t> image;
                for (std::uint64_t x = 0; x < M; ++x) image.insert(modarith::powmod(x, s * e1, M));
                t.expect(P.k() == 1 + (p - 1) / s, what + ": k = " + std::to_string(P.k()));
                t.expect(image.size() == 1 + (p - 1) / s, what + ": image size " + std::to_string(image.size()));
                check_partition(t, R, P, what);
                ++built;
            }
        }
    }
    // Every GF(p^n) with n >= 2 and p^n <= 512: power classes for each r | q - 1,
    // one linearized discriminator per rank, and one explicit random partition.
    Rng rng(4096);
    for (std::uint64_t p = 2; p * p <= 512; ++p) {
        if (!modarith::is_prime(p)) continue;
        for (unsigned n = 2; modarith::ipow(p, n) <= 512; ++n) {
            const Ctx F = gf(p, n);
            const std::uint64_t q = F.size();
            const std::string tag = "GF(" + std::to_string(q) + ")";
            ++carriers;
            for (std::uint64_t r : modarith::divisors(q - 1)) {
                const auto P = poun_from_discriminator(F, power_expr(r));
                t.expect(P.k() == 1 + (q - 1) / r, tag + " x^" + std::to_string(r) + ": k = " + std::to_string(P.k()));
                check_partition(t, F, P, tag + " x^" + std::to_string(r));
                ++built;
            }
            for (std::size_t rank = 0; rank <= n; ++rank) {
                const auto co = random_linearized_of_rank(F.field(), rank, rng);
                const auto P = poun_from_discriminator(F, linearized_expr(F.field(), co));
                t.expect(P.k() == modarith::ipow(p, static_cast<unsigned>(rank)),
                         tag + " linearized rank " + std::to_string(rank) + ": k = " + std::to_string(P.k()));
                check_partition(t, F, P, tag + " linearized rank " + std::to_string(rank));
                ++built;
            }
            if (q <= 64) {
                const std::size_t k = 1 + rng.uniform(std::min<std::uint64_t>(q, 8));
                std::vector<std::vector<Value>> classes(k);
                std::vector<Value> elems(q);
                std::iota(elems.begin(), elems.end(), Value{0});
                rng.shuffle(elems);
                for (std::size_t i = 0; i < q; ++i) classes[i < k ? i : rng.uniform(k)].push_back(elems[i]);
                for (auto& c : classes) std::sort(c.begin(), c.end());
                const auto P = poun_from_classes(F, classes);
                t.expect(P.k() == k, tag + " explicit classes: k");
                check_partition(t, F, P, tag + " explicit classes");
                std::set<std::vector<Value>> want(classes.begin(), classes.end()),
                    got(P.classes.begin(), P.classes.end());
                t.expect(want == got, tag + " explicit classes differ");
                ++built;
            }
        }
    }
    return t.outcome(std::to_string(built) + " partitions over " + std::to_string(carriers) + " carriers in " +
                     std::to_string(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------

Outcome crt_and_porting() {
    Tally t;
    const std::vector<std::pair<std::uint64_t, std::vector<std::pair<std::uint64_t, unsigned>>>> rings{
        {12, {{2, 2}, {3, 1}}}, {36, {{2, 2}, {3, 2}}}, {180, {{2, 2}, {3, 2}, {5, 1}}}};
    for (auto& [N, fac] : rings) {
        const RingCtx R(N, fac);
        std::vector<std::uint64_t> mods;
        for (auto [p, l] : fac) mods.push_back(modarith::ipow(p, l));
        std::set<std::vector<Value>> seen;
        for (Value x = 0; x < N; ++x) {
            const auto r = R.crt_split(x);
            bool residues = r.size() == mods.size();
            for (std::size_t i = 0; residues && i < mods.size(); ++i) residues = r[i] == x % mods[i];
            t.expect(residues, "Z_" + std::to_string(N) + " split(" + std::to_string(x) + ") residues");
            t.expect(R.crt_join(r) == x, "Z_" + std::to_string(N) + " join(split(" + std::to_string(x) + "))");
            seen.insert(r);
        }
        t.expect(seen.size() == N, "Z_" + std::to_string(N) + " split not injective");
    }
    for (auto [p, l] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 2}, {3, 3}}) {
        const auto h = porting_hom_zpl(p, l);
        const std::uint64_t M = modarith::ipow(p, l), T = M / p * (p - 1);
        t.expect(h.target_moduli() == std::vector<std::uint64_t>{T}, "target modulus for " + std::to_string(M));
        for (Value x = 0; x < M; ++x)
            for (Value y = 0; y < M; ++y) {
                const auto hx = h.apply_component(0, x), hy = h.apply_component(0, y);
                const std::string at = "Z_" + std::to_string(M) + " at (" + std::to_string(x) + "," + std::to_string(y) + ")";
                t.expect(h.apply_component(0, (x + y) % M) == (hx + hy) % T, at + " additive");
                t.expect(h.apply_component(0, x * y % M) == hx * hy % T, at + " multiplicative");
            }
    }
    return t.outcome("N in {12, 36, 180}, p^l in {9, 25, 27}");
}

Outcome triangular() {
    Tally t;
    std::size_t schemes = 0;
    for (auto [q, m] : std::vector<std::pair<std::uint64_t, std::size_t>>{{5, 2}, {5, 3}, {7, 2}}) {
        const Ctx F = gf(q);
        for (Group g : {Group::Units, Group::All})
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                Rng rng(1000 * q + 100 * m + seed);
                const auto T = random_triangular(F, m, g, rng);
                const DomainSpec D = group_domain(g, m);
                const std::string what = "GF(" + std::to_string(q) + ")^" + std::to_string(m) + " " + group_name(g) +
                                         " seed " + std::to_string(seed);
                const auto rep = exhaustive_bijectivity(F, D, D, [&](std::span<const Value> x) { return T.forward(F, x); });
                t.expect(rep.ok, what + " is not a bijection");
                for_each_point(F, D, [&](std::span<const Value> x) {
                    const auto y = T.forward(F, x);
                    const auto back = T.inverse(F, y);
                    t.expect(back && std::equal(back->begin(), back->end(), x.begin(), x.end()),
                             what + ": inverse fails at " + join(x));
                    return true;
                });
                ++schemes;
            }
    }
    return t.outcome(std::to_string(schemes) + " schemes over both groups");
}

Outcome solver_cross_check() {
    const Ctx F = gf(7);
    const auto k = pkc_keygen(F, kRef, 42);
    Tally t;
    Rng rng(777);
    const DomainSpec D = group_domain(kRef.group, kRef.inputs());
    t.expect(k.lt.arity == kRef.inputs(), "public polynomials take xi and omega");
    for (int i = 0; i < 50; ++i) {
        std::vector<Value> xi(kRef.mu), om(kRef.kappa);
        for (auto& v : xi) v = rng.range(1, 6);
        for (auto& v : om) v = rng.range(1, 6);
        const auto e = pkc_encrypt(F, k.lt, xi, om);
        const auto sols = solve_small_system(F, k.lt.polys, e, D);
        std::set<std::vector<Value>> plains;
        for (auto& s : sols) plains.emplace(s.begin(), s.begin() + kRef.mu);
        const auto dec = pkc_decrypt(F, k.bt, k.ht, e);
        const std::string what = "ciphertext " + join(e);
        t.expect(plains.size() == 1, what + ": " + std::to_string(plains.size()) + " candidate plaintexts");
        t.expect(!plains.empty() && *plains.begin() == dec && dec == xi, what + ": solver, decrypt and xi disagree");
    }
    return t.outcome("50 ciphertexts");
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (auto& ent : fs::directory_iterator(dir)) {
        std::ifstream in(ent.path(), std::ios::binary);
        files[ent.path().filename().string()] = std::string(std::istreambuf_iterator<char>(in), {});
    }
    return files;
}

Outcome cli_determinism() {
    Tally t;
    const fs::path base = fs::temp_directory_path() / ("mvmap_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* name : {"a", "b"}) {
        const fs::path dir = base / name;
        const std::string cmd = std::string("\"") + MVMAP_CLI_PATH +
                                "\" keygen pkc --field 7,1 --group units --mu 2 --kappa 1 --L 1 --lambda 2 --seed 42"
                                " --out-dir \"" + dir.string() + "\" > /dev/null";
        const int rc = std::system(cmd.c_str());
        t.expect(rc == 0, "keygen exited with " + std::to_string(rc));
        runs.push_back(rc == 0 ? read_dir(dir) : std::map<std::string, std::string>{});
    }
    fs::remove_all(base);
    const std::set<std::string> want{"HT.key", "BT.key", "LT.key"};
    std::set<std::string> names;
    for (auto& [n, body] : runs[0]) {
        names.insert(n);
        t.expect(!body.empty(), n + " is empty");
    }
    t.expect(names == want, "unexpected key file set");
    t.expect(runs[0] == runs[1], "key files differ between runs");
    std::size_t bytes = 0;
    for (auto& [n, body] : runs[0]) bytes += body.size();
    return t.outcome(std::to_string(names.size()) + " files, " + std::to_string(bytes) + " bytes identical");
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

}  // namespace

int main() {
    const Criterion all[] = {
        {"PKC decrypt(encrypt) = id on the GF(7) instance", pkc_correctness},
        {"DS verify(sign) = id and authenticate on the GF(7) instance", ds_correctness},
        {"hash table invariant over 20 seeded keygens", ht_invariant},
        {"linearized, artin and power families over GF(q)", permutation_families},
        {"Z_{p^l} lifts by methods 1 and 2", zpl_methods},
        {"Hensel inversion against exhaustive preimages", hensel_vs_preimage},
        {"partitions of unity over carriers of at most 512 elements", partitions},
        {"CRT split/join and the porting homomorphism", crt_and_porting},
        {"triangular bijections of G^m", triangular},
        {"system solver recovers the plaintext", solver_cross_check},
        {"keygen pkc is byte-for-byte deterministic", cli_determinism},
    };
    int failed = 0, idx = 0;
    for (const auto& c : all) {
        ++idx;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::printf("%s %2d  %s  [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", idx, c.name, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", idx - failed, idx);
    return failed ? 1 : 0;
}
