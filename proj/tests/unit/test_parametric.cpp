#include "mvmap/oracle.hpp"
#include "mvmap/parametric.hpp"
#include "support.hpp"

using namespace mvmap;
using namespace mvmap::test;

namespace {

std::vector<Value> fwd(const ParametricMap& P, const Ctx& F, std::vector<Value> z, std::vector<Value> x) {
    return P.forward(F, z, x);
}

// For every parameter in G^l, x -> P(z; x) is injective on G^m and inverse undoes it.
void check_parametric(const Ctx& F, const ParametricMap& P) {
    const Group g = P.group();
    for_each_point(F, group_domain(g, P.params()), [&](std::span<const Value> z) {
        auto c = exhaustive_injectivity(F, group_domain(g, P.arity()),
                                        [&](std::span<const Value> x) { return P.forward(F, z, x); });
        REQUIRE_FALSE(c);
        for_each_point(F, group_domain(g, P.arity()), [&](std::span<const Value> x) {
            auto y = P.forward(F, z, x);
            auto back = P.inverse(F, z, y);
            REQUIRE(back);
            REQUIRE(std::equal(back->begin(), back->end(), x.begin(), x.end()));
            return true;
        });
        return true;
    });
    // Expression forms agree with the direct evaluation.
    const auto fe = P.forward_exprs(F);
    const auto ie = P.inverse_exprs(F);
    for_each_point(F, group_domain(g, P.params() + P.arity()), [&](std::span<const Value> zx) {
        auto y = P.forward(F, zx.first(P.params()), zx.subspan(P.params()));
        for (std::size_t j = 0; j < fe.size(); ++j) REQUIRE(eval(fe[j], F, zx) == y[j]);
        if (ie) {
            std::vector<Value> zy(zx.begin(), zx.begin() + static_cast<std::ptrdiff_t>(P.params()));
            zy.insert(zy.end(), y.begin(), y.end());
            for (std::size_t j = 0; j < ie->size(); ++j) REQUIRE(eval((*ie)[j], F, zy) == zx[P.params() + j]);
        }
        return true;
    });
}

}  // namespace

TEST_SUITE("parametric") {

TEST_CASE("power map with a constant exponent") {
    const Ctx F = gf(7);
    const auto eta = parametric_power(F, 1, Expr::var(0), Expo::constant(5), Group::Units);
    CHECK(fwd(eta, F, {2}, {3}) == std::vector<Value>{3});
    CHECK(F.mul(2, slow_pow(F.field(), 3, 5)) == 3);
    const Value z[1] = {2}, y[1] = {3};
    CHECK(*eta.inverse(F, z, y) == std::vector<Value>{3});
    CHECK(slow_pow(F.field(), F.mul(F.inv(2), 3), 5) == 3);
    check_parametric(F, eta);
    const auto id = parametric_power(F, 1, Expr::constant(1), Expo::constant(1), Group::Units);
    for (Value a = 1; a < 7; ++a) CHECK(fwd(id, F, {5}, {a}) == std::vector<Value>{a});
}

TEST_CASE("power map with a parameter-dependent exponent") {
    const Ctx F = gf(5);
    // 1 + 2 log z is odd, hence prime to 4, for every z.
    const Expo e = Expo::add({Expo::constant(1), Expo::mul({Expo::constant(2), Expo::log_var(0)})});
    const auto eta = parametric_power(F, 1, Expr::pow(Expr::var(0), 2), e, Group::Units);
    check_parametric(F, eta);
    for (Value z = 1; z < 5; ++z)
        for (Value x = 1; x < 5; ++x)
            CHECK(fwd(eta, F, {z}, {x})[0] == F.mul(F.mul(z, z), slow_pow(F.field(), x, 1 + 2 * F.field().log(z))));
    CHECK_FALSE(eta.inverse_exprs(F));
    CHECK(error_of([&] { parametric_power(F, 1, Expr::var(0), e, Group::All); }) == Errc::InvalidArgument);
}

TEST_CASE("power map preconditions") {
    const Ctx F = gf(7);
    CHECK(error_of([&] { parametric_power(F, 1, parse_expr("(+ v0 (c -1))", F, 1), Expo::constant(1), Group::Units); }) ==
          Errc::FZero);
    CHECK(error_of([&] { parametric_power(F, 1, Expr::var(0), Expo::constant(1), Group::All); }) == Errc::FZero);
    CHECK(error_of([&] { parametric_power(F, 1, Expr::var(0), Expo::constant(2), Group::Units); }) == Errc::GcdNotOne);
    CHECK(error_of([&] { parametric_power(F, 1, Expr::var(1), Expo::constant(1), Group::Units); }) ==
          Errc::InvalidArgument);
    // log z takes every value of Z_6, so 1 + log z is sometimes even.
    const Expo e = Expo::add({Expo::constant(1), Expo::log_var(0)});
    CHECK(error_of([&] { parametric_power(F, 1, Expr::constant(1), e, Group::Units); }) == Errc::GcdNotOne);
}

TEST_CASE("diagonal maps act coordinatewise") {
    const Ctx F = gf(5);
    const auto a = parametric_power(F, 1, Expr::var(0), Expo::constant(3), Group::Units);
    const auto b = parametric_power(F, 1, Expr::constant(2), Expo::constant(1), Group::Units);
    const auto d = diagonal({a, b});
    CHECK(d.arity() == 2);
    for (Value z = 1; z < 5; ++z)
        for (Value x = 1; x < 5; ++x)
            for (Value y = 1; y < 5; ++y)
                CHECK(fwd(d, F, {z}, {x, y}) == std::vector<Value>{fwd(a, F, {z}, {x})[0], fwd(b, F, {z}, {y})[0]});
    check_parametric(F, d);
    const auto other = parametric_power(F, 2, Expr::constant(1), Expo::constant(1), Group::Units);
    CHECK(error_of([&] { diagonal({a, other}); }) == Errc::InvalidArgument);
}

TEST_CASE("maps assembled from a partition of the parameters") {
    const Ctx F = gf(7);
    // Cubes split F* into {1, 2, 4} and {3, 5, 6}.
    const auto P = poun_from_discriminator(F, power_expr(3));
    REQUIRE(P.k() == 3);
    const std::vector<Expr> g = {P.indicators[1], Expr::add({P.indicators[0], P.indicators[2]})};
    const std::vector<Expr> phi = {Expr::constant(2), Expr::constant(3)};
    const std::vector<Expr> chi = {Expr::constant(0), Expr::constant(1)};
    const std::vector<ParametricMap> zeta = {
        parametric_power(F, 1, Expr::var(0), Expo::constant(5), Group::Units),
        parametric_power(F, 1, Expr::constant(3), Expo::constant(1), Group::Units)};
    const auto eta = assemble_from_partition(F, 1, g, phi, chi, zeta, Group::Units);
    for (Value z = 1; z < 7; ++z)
        for (Value x = 1; x < 7; ++x) {
            const bool first = P.class_of[F.pow_u(z, 3)] == 1;
            const Value want = first ? F.mul(2, fwd(zeta[0], F, {z}, {x})[0])
                                     : F.mul(3, F.add(fwd(zeta[1], F, {z}, {x})[0], 1));
            CHECK(fwd(eta, F, {z}, {x})[0] == want);
        }
    check_parametric(F, eta);
    // One class with trivial multiplier and shift is the inner map.
    const auto one = assemble_from_partition(F, 1, {Expr::constant(1)}, {Expr::constant(1)}, {Expr::constant(0)},
                                             {zeta[0]}, Group::Units);
    for (Value z = 1; z < 7; ++z)
        for (Value x = 1; x < 7; ++x) CHECK(fwd(one, F, {z}, {x}) == fwd(zeta[0], F, {z}, {x}));
    CHECK(error_of([&] {
              assemble_from_partition(F, 1, g, phi, chi, zeta, Group::All);
          }) == Errc::InvalidArgument);
    CHECK(error_of([&] {
              assemble_from_partition(F, 1, g, {Expr::constant(0), Expr::constant(3)}, chi, zeta, Group::Units);
          }) == Errc::NotUnitValued);
    CHECK(error_of([&] {
              assemble_from_partition(F, 1, {P.indicators[1], P.indicators[1]}, phi, chi, zeta, Group::Units);
          }) == Errc::InvalidArgument);
}

TEST_CASE("serialized parametric maps rebuild the same map") {
    const Ctx F = gf(5);
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_power_map(F, 2, Group::Units, true, rng);
        const auto b = random_power_map(F, 2, Group::Units, false, rng);
        const auto d = diagonal({a, b});
        const auto r = ParametricMap::from_sexp(F, parse_sexp(to_string(d.to_sexp())));
        for_each_point(F, DomainSpec::units(4), [&](std::span<const Value> zx) {
            CHECK(d.forward(F, zx.first(2), zx.subspan(2)) == r.forward(F, zx.first(2), zx.subspan(2)));
            return true;
        });
    }
    CHECK(error_of([&] { ParametricMap::from_sexp(F, parse_sexp("(nonsense)")); }) == Errc::Parse);
}

TEST_CASE("random generators honour their contracts") {
    for (std::uint64_t p : {5u, 7u}) {
        const Ctx F = gf(p);
        Rng rng(p);
        for (int t = 0; t < 20; ++t) {
            for (Group g : {Group::Units, Group::All}) {
                const Expr v = random_group_valued(F, 2, g, g == Group::Units, rng);
                const Expr c = random_unit_coeff(F, 2, g, rng);
                for_each_point(F, group_domain(g, 2), [&](std::span<const Value> x) {
                    if (g == Group::Units) CHECK(eval(v, F, x) != 0);
                    CHECK(eval(c, F, x) != 0);
                    return true;
                });
                check_parametric(F, random_power_map(F, 1, g, true, rng));
            }
            const Expo e = random_unit_exponent(F, 2, true, rng);
            for_each_point(F, DomainSpec::units(2), [&](std::span<const Value> x) {
                const auto ev = eval_expo(e, F, x);
                CHECK(modarith::gcd(ev.r[0], p - 1) == 1);
                return true;
            });
        }
    }
}

TEST_CASE("triangular scheme over GF(5) with m = 2") {
    const Ctx F = gf(5);
    const Field& K = F.field();
    const Expo e2 = Expo::add({Expo::constant(1), Expo::mul({Expo::constant(2), Expo::log_var(0)})});
    std::vector<UniBijection> f = {perm_power(F, 3), perm_power(F, 1)};
    std::vector<UniBijection> g = {perm_power(F, 3), perm_power(F, 1)};
    std::vector<ParametricMap> h = {parametric_power(F, 1, Expr::var(0), Expo::constant(3), Group::Units),
                                    parametric_power(F, 1, Expr::constant(2), e2, Group::Units)};
    const TriangularScheme T(F, f, g, h, Group::Units);
    Rng rng(4);
    for (int t = 0; t < 3; ++t) {
        const Value x1 = rng.range(1, 4), x2 = rng.range(1, 4);
        // zeta_2 = h_2(x_1; f_2(x_2)), zeta_1 = h_1(zeta_2; f_1(x_1)).
        const Value z2 = K.mul(2, slow_pow(K, x2, 1 + 2 * K.log(x1)));
        const Value z1 = K.mul(z2, slow_pow(K, slow_pow(K, x1, 3), 3));
        const std::vector<Value> want = {slow_pow(K, z1, 3), z2};
        const Value x[2] = {x1, x2};
        CHECK(T.forward(F, x) == want);
    }
    auto rep = exhaustive_bijectivity(F, DomainSpec::units(2), DomainSpec::units(2),
                                      [&](std::span<const Value> x) { return T.forward(F, x); });
    CHECK(rep.ok);
    const Value y0[2] = {0, 3};
    CHECK_FALSE(T.inverse(F, y0));
    const auto ex = T.forward_exprs(F);
    for_each_point(F, DomainSpec::units(2), [&](std::span<const Value> x) {
        const auto y = T.forward(F, x);
        for (std::size_t i = 0; i < 2; ++i) CHECK(eval(ex[i], F, x) == y[i]);
        CHECK(*T.inverse(F, y) == std::vector<Value>(x.begin(), x.end()));
        return true;
    });
    const auto R = TriangularScheme::from_sexp(F, parse_sexp(to_string(T.to_sexp())));
    for_each_point(F, DomainSpec::units(2), [&](std::span<const Value> x) {
        CHECK(R.forward(F, x) == T.forward(F, x));
        return true;
    });
    // f_i must fix 0 when G = F*.
    std::vector<UniBijection> bad = {perm_power(F, 3), UniBijection(Carrier::whole(CarrierKind::Field, 5), {1, 0, 2, 3, 4})};
    CHECK(error_of([&] { TriangularScheme(F, bad, g, h, Group::Units); }) == Errc::InvalidArgument);
}

TEST_CASE("triangular scheme identities and the one-variable chain") {
    const Ctx F = gf(7);
    const auto id = perm_power(F, 1);
    const auto h0 = parametric_power(F, 0, Expr::constant(1), Expo::constant(1), Group::Units);
    const TriangularScheme I(F, {id, id}, {id, id},
                             {parametric_power(F, 1, Expr::constant(1), Expo::constant(1), Group::Units),
                              parametric_power(F, 1, Expr::constant(1), Expo::constant(1), Group::Units)},
                             Group::Units);
    for_each_point(F, DomainSpec::units(2), [&](std::span<const Value> x) {
        CHECK(I.forward(F, x) == std::vector<Value>(x.begin(), x.end()));
        return true;
    });
    const auto h1 = parametric_power(F, 0, Expr::constant(3), Expo::constant(5), Group::Units);
    const TriangularScheme C(F, {perm_power(F, 5)}, {perm_power(F, 1)}, {h1}, Group::Units);
    for (Value x = 1; x < 7; ++x) {
        const Value a[1] = {x};
        CHECK(C.forward(F, a)[0] == F.mul(3, F.pow_u(F.pow_u(x, 5), 5)));
    }
    (void)h0;
}

TEST_CASE("random triangular schemes are bijections of G^m") {
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::size_t>>{{5, 2}, {7, 2}, {5, 3}}) {
        const Ctx F = gf(p);
        for (Group g : {Group::Units, Group::All}) {
            Rng rng(p * 10 + m);
            const auto T = random_triangular(F, m, g, rng);
            auto rep = exhaustive_bijectivity(F, group_domain(g, m), group_domain(g, m),
                                              [&](std::span<const Value> x) { return T.forward(F, x); });
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("hybrid multivariate bijection with a coordinate swap") {
    const Ctx F = gf(5);
    const std::vector<std::size_t> perm = {1, 0};
    const std::vector<std::uint64_t> exps = {1, 1};
    CHECK(phi_order(F, perm, exps) == 2);
    const std::uint64_t s[2] = {1, 1};
    const Expr h = symmetric_product_hash(2, 2, s);
    const auto P = poun_from_classes(F, {{0, 1, 2}, {3, 4}});
    const HybridMvMap H(F, perm, exps, h, P, {2, 1}, std::nullopt);
    CHECK(H.rho() == 2);
    auto rep = exhaustive_bijectivity(F, DomainSpec::units(2), DomainSpec::units(2),
                                      [&](std::span<const Value> x) { return H.forward(F, x); });
    CHECK(rep.ok);
    for_each_point(F, DomainSpec::units(2), [&](std::span<const Value> x) {
        const Value hv = F.mul(F.mul(x[0], x[1]), F.mul(x[1], x[0]));
        CHECK(H.hash(F, x) == hv);
        const std::vector<Value> want = P.class_of[hv] == 0 ? std::vector<Value>{x[0], x[1]}
                                                             : std::vector<Value>{x[1], x[0]};
        CHECK(H.forward(F, x) == want);
        CHECK(*H.inverse(F, H.forward(F, x)) == std::vector<Value>(x.begin(), x.end()));
        return true;
    });
    Rng rng(8);
    const HybridMvMap He(F, perm, exps, h, P, {1, 2}, random_triangular(F, 2, Group::Units, rng));
    auto rep2 = exhaustive_bijectivity(F, DomainSpec::units(2), DomainSpec::units(2),
                                       [&](std::span<const Value> x) { return He.forward(F, x); });
    CHECK(rep2.ok);
    CHECK(error_of([&] { HybridMvMap(F, perm, exps, Expr::var(0), P, {2, 1}, std::nullopt); }) ==
          Errc::HashNotInvariant);
    // Phi = identity has order one.
    const std::vector<std::size_t> idp = {0, 1};
    CHECK(phi_order(F, idp, exps) == 1);
    const std::vector<std::uint64_t> e3 = {3, 1};
    CHECK(phi_order(F, idp, e3) == 2);
    const std::vector<std::uint64_t> e2 = {2, 1};
    CHECK(error_of([&] { phi_order(F, idp, e2); }) == Errc::GcdNotOne);
}

}  // TEST_SUITE
