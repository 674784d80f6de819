#include "mvmap/selftest.hpp"

#include <chrono>

#include "mvmap/modarith.hpp"
#include "mvmap/oracle.hpp"
#include "mvmap/partition.hpp"
#include "mvmap/scheme.hpp"
#include "mvmap/unimap.hpp"

namespace mvmap {

namespace {

using Check = std::function<std::string()>;  // returns a detail string; throws on failure

struct Failure {
    std::string why;
};

void require(bool ok, const std::string& why) {
    if (!ok) throw Failure{why};
}

std::string field_axioms(std::uint64_t p, unsigned n) {
    const Field F = Field::with_default_modulus(p, n);
    const std::uint64_t q = F.order();
    for (Value a = 0; a < q; ++a) {
        require(F.add(a, F.neg(a)) == 0, "additive inverse");
        if (a) require(F.mul(a, F.inv(a)) == 1, "multiplicative inverse");
        for (Value b = 0; b < q; ++b) {
            require(F.mul(a, b) == F.mul_slow(a, b), "table product disagrees with schoolbook product");
            for (Value c = 0; c < q; c += 3) require(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)), "distributivity");
        }
    }
    return "GF(" + std::to_string(q) + ") axioms exhaustive";
}

std::string power_map_bijective() {
    const Ctx ctx = Ctx::field(7);
    const auto f = perm_power(ctx, 5);
    auto r = exhaustive_bijectivity(ctx, DomainSpec::all(1), DomainSpec::all(1),
                                    [&](std::span<const Value> x) { return std::vector<Value>{f.apply(x[0])}; });
    require(r.ok, "z^5 is not a bijection of GF(7)");
    const auto sq = exhaustive_injectivity(ctx, DomainSpec::all(1), [&](std::span<const Value> x) {
        return std::vector<Value>{ctx.pow_u(x[0], 2)};
    });
    require(sq && sq->x == std::vector<Value>{1} && sq->x2 == std::vector<Value>{6}, "z^2 collision witness");
    return "z^5 bijective on GF(7); z^2 collides at (1, 6)";
}

std::string crt_roundtrip() {
    for (auto N : {std::uint64_t{12}, std::uint64_t{36}, std::uint64_t{180}}) {
        std::vector<std::pair<std::uint64_t, unsigned>> fac;
        for (auto p : modarith::prime_divisors(N)) {
            unsigned l = 0;
            for (auto m = N; m % p == 0; m /= p) ++l;
            fac.emplace_back(p, l);
        }
        const RingCtx R(N, fac);
        for (Value x = 0; x < N; ++x) require(R.crt_join(R.crt_split(x)) == x, "crt_join o crt_split != id");
    }
    return "Z_12, Z_36, Z_180";
}

std::string zpl_and_hensel(bool full) {
    Rng rng(7);
    int built = 0;
    for (std::uint64_t p : {3u, 5u})
        for (unsigned l : {2u, 3u}) {
            const int reps = full ? 10 : 2;
            std::uint64_t pl = 1;
            for (unsigned i = 0; i < l; ++i) pl *= p;
            for (int t = 0; t < reps; ++t) {
                const auto a = random_permutation(p, rng);
                auto m1 = perm_zpl_method1(p, l, a, draw_method1_c(p, rng));
                auto m2 = perm_zpl_method2(p, l, a, draw_method2_params(p, rng));
                for (const UniBijection* b : {&m1, &m2}) {
                    for (Value y = 0; y < pl; ++y)
                        require(hensel_invert(*b->zpl_poly, p, l, y) == b->invert(y), "Hensel disagrees with table");
                    for (Value i = 0; i < p; ++i) require(b->apply(i) % p == a[i], "lift misses the target permutation");
                }
                built += 2;
            }
        }
    return std::to_string(built) + " lifts checked against Hensel inversion";
}

std::string partitions() {
    int count = 0;
    for (std::uint64_t q : {5u, 7u, 9u, 16u}) {
        std::uint64_t p = 2;
        while (q % p) ++p;
        unsigned n = 0;
        for (auto m = q; m > 1; m /= p) ++n;
        const Ctx ctx(std::make_shared<const Field>(Field::with_default_modulus(p, n)));
        for (auto r : modarith::divisors(q - 1)) {
            const auto P = poun_from_discriminator(ctx, power_expr(r));
            for (Value x = 0; x < q; ++x) {
                Value s = 0;
                for (std::size_t i = 0; i < P.k(); ++i) {
                    const Value arg[1] = {x};
                    const Value li = eval(P.indicators[i], ctx, arg);
                    require(li == P.tables[i][x], "indicator expression disagrees with its table");
                    s = ctx.add(s, li);
                    for (std::size_t j = 0; j < i; ++j) require(ctx.mul(li, P.tables[j][x]) == 0, "l_i l_j != 0");
                }
                require(s == 1, "sum of indicators != 1");
            }
            ++count;
        }
    }
    return std::to_string(count) + " power-class partitions";
}

std::string triangular(std::uint64_t p, std::size_t m, int seeds) {
    const Ctx ctx = Ctx::field(p);
    for (int s = 0; s < seeds; ++s) {
        Rng rng(1000 + s);
        const auto T = random_triangular(ctx, m, Group::Units, rng);
        auto r = exhaustive_bijectivity(ctx, DomainSpec::units(m), DomainSpec::units(m),
                                        [&](std::span<const Value> x) { return T.forward(ctx, x); });
        require(r.ok, "triangular map not bijective on (F*)^m");
        for_each_point(ctx, DomainSpec::units(m), [&](std::span<const Value> x) {
            auto back = T.inverse(ctx, T.forward(ctx, x));
            require(back && std::equal(back->begin(), back->end(), x.begin()), "invert o forward != id");
            return true;
        });
    }
    return std::to_string(seeds) + " schemes over GF(" + std::to_string(p) + ")^" + std::to_string(m);
}

std::string pkc_roundtrip(std::uint64_t p, Group g, std::size_t mu, std::size_t kappa, std::size_t L,
                          std::size_t lambda, std::uint64_t seed) {
    const Ctx ctx = Ctx::field(p);
    SchemeParams prm{mu, kappa, L, lambda, false, g};
    const auto k = pkc_keygen(ctx, prm, seed);
    std::size_t n = 0;
    for_each_point(ctx, group_domain(g, prm.inputs()), [&](std::span<const Value> in) {
        auto xi = in.first(mu);
        auto e = pkc_encrypt(ctx, k.lt, xi, in.subspan(mu));
        auto d = pkc_decrypt(ctx, k.bt, k.ht, e);
        require(std::equal(d.begin(), d.end(), xi.begin(), xi.end()), "decrypt o encrypt != id");
        ++n;
        return true;
    });
    return std::to_string(n) + " tuples";
}

std::string ds_roundtrip(std::uint64_t p, Group g, std::size_t mu, std::size_t kappa, std::size_t L,
                         std::size_t lambda, std::uint64_t seed) {
    const Ctx ctx = Ctx::field(p);
    SchemeParams prm{mu, kappa, L, lambda, true, g};
    const auto k = ds_keygen(ctx, prm, seed);
    std::size_t n = 0;
    for_each_point(ctx, group_domain(g, prm.inputs()), [&](std::span<const Value> in) {
        auto xi = in.first(mu);
        auto om = in.subspan(mu);
        auto e = ds_sign(ctx, k.st, k.ht, xi, om);
        auto v = ds_verify(ctx, k.svt, e);
        require(std::equal(v.begin(), v.end(), xi.begin(), xi.end()), "verify o sign != id");
        require(ds_authenticate(ctx, k.sat, xi, om, e), "genuine signature not authenticated");
        ++n;
        return true;
    });
    return std::to_string(n) + " tuples";
}

std::string ht_invariant(int seeds) {
    const Ctx ctx = Ctx::field(7);
    for (int s = 0; s < seeds; ++s)
        for (bool sign : {false, true}) {
            Rng rng(s);
            const auto ht = gen_hash_keys(ctx, SchemeParams{2, 1, 1, 2, sign, Group::Units}, rng);
            require(!check_ht_invariant(ctx, ht), "hash table invariant fails");
        }
    return std::to_string(seeds) + " seeds, both modes";
}

}  // namespace

int run_selftest(bool full, const std::function<void(const std::string&)>& emit) {
    std::vector<std::pair<std::string, Check>> checks = {
        {"field-gf7", [] { return field_axioms(7, 1); }},
        {"field-gf8", [] { return field_axioms(2, 3); }},
        {"field-gf9", [] { return field_axioms(3, 2); }},
        {"power-map-oracle", power_map_bijective},
        {"crt-roundtrip", crt_roundtrip},
        {"zpl-lifts-hensel", [full] { return zpl_and_hensel(full); }},
        {"partition-of-unity", partitions},
        {"triangular-gf5-m2", [] { return triangular(5, 2, 3); }},
        {"pkc-gf7-reference", [] { return pkc_roundtrip(7, Group::Units, 2, 1, 1, 2, 42); }},
        {"ds-gf7-reference", [] { return ds_roundtrip(7, Group::Units, 2, 1, 1, 2, 42); }},
        {"pkc-direct-gf5", [] { return pkc_roundtrip(5, Group::Units, 2, 0, 0, 0, 3); }},
    };
    if (full) {
        checks.insert(checks.end(), {
            {"field-gf16", [] { return field_axioms(2, 4); }},
            {"triangular-gf5-m3", [] { return triangular(5, 3, 10); }},
            {"triangular-gf7-m2", [] { return triangular(7, 2, 10); }},
            {"ht-invariant-20", [] { return ht_invariant(20); }},
            {"pkc-gf5-group-all", [] { return pkc_roundtrip(5, Group::All, 1, 1, 1, 1, 9); }},
            {"ds-gf5-group-all", [] { return ds_roundtrip(5, Group::All, 1, 1, 1, 1, 9); }},
            {"pkc-gf11-lambda3", [] { return pkc_roundtrip(11, Group::Units, 1, 1, 2, 3, 5); }},
            {"ds-direct-gf7", [] { return ds_roundtrip(7, Group::Units, 2, 0, 0, 0, 4); }},
        });
    }
    int failures = 0;
    for (auto& [name, fn] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string line;
        try {
            const std::string detail = fn();
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
            line = "PASS " + name + ": " + detail + " (" + std::to_string(ms.count()) + " ms)";
        } catch (const Failure& f) {
            ++failures;
            line = "FAIL " + name + ": " + f.why;
        } catch (const std::exception& e) {
            ++failures;
            line = "FAIL " + name + ": unexpected error: " + e.what();
        }
        emit(line);
    }
    return failures;
}

}  // namespace mvmap
