#include "mvmap/partition.hpp"

#include <algorithm>

#include "mvmap/linalg.hpp"
#include "mvmap/modarith.hpp"
#include "mvmap/poly.hpp"

namespace mvmap {

namespace {

// l_i composed with f, over the given distinct values.
Expr lagrange_indicator(const Ctx& ctx, const Expr& f, const std::vector<Value>& a, std::size_t i) {
    if (a.size() == 1) return Expr::constant(ctx.from_int(1));
    Value denom = ctx.from_int(1);
    std::vector<Expr> factors;
    factors.push_back(Expr());  // placeholder for the leading constant
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i) continue;
        const Value diff = ctx.sub(a[i], a[j]);
        if (!ctx.is_unit(diff)) fail(Errc::InvalidArgument, "discriminator values differ by a non-unit");
        denom = ctx.mul(denom, diff);
        factors.push_back(a[j] == 0 ? f : Expr::add({f, Expr::constant(ctx.neg(a[j]))}));
    }
    factors[0] = Expr::constant(ctx.inv(denom));
    return Expr::mul(std::move(factors));
}

}  // namespace

PartitionOfUnity poun_from_discriminator(const Ctx& ctx, const Expr& f) {
    const std::uint64_t n = ctx.size();
    std::vector<Value> vals(n);
    for (Value x = 0; x < n; ++x) {
        const Value arg[1] = {x};
        vals[x] = eval(f, ctx, arg);
    }
    PartitionOfUnity P;
    P.discriminator = f;
    P.codomain = vals;
    std::sort(P.codomain.begin(), P.codomain.end());
    P.codomain.erase(std::unique(P.codomain.begin(), P.codomain.end()), P.codomain.end());
    const std::size_t k = P.codomain.size();
    P.classes.assign(k, {});
    P.class_of.assign(n, 0);
    for (Value x = 0; x < n; ++x) {
        auto i = static_cast<std::size_t>(std::lower_bound(P.codomain.begin(), P.codomain.end(), vals[x]) -
                                          P.codomain.begin());
        P.class_of[x] = i;
        P.classes[i].push_back(x);
    }
    for (std::size_t i = 0; i < k; ++i) {
        P.indicators.push_back(lagrange_indicator(ctx, f, P.codomain, i));
        std::vector<Value> t(n, 0);
        for (auto x : P.classes[i]) t[x] = ctx.from_int(1);
        P.tables.push_back(std::move(t));
    }
    return P;
}

PartitionOfUnity poun_zpl(const Ctx& zpl, std::uint64_t s) {
    const RingCtx& R = zpl.ring();
    if (R.components().size() != 1) fail(Errc::InvalidArgument, "expected a prime-power residue ring");
    const auto& c = R.components()[0];
    if (s == 0 || (c.p - 1) % s != 0) fail(Errc::SNotDivisor, "s must divide p - 1");
    const std::uint64_t e = s * (c.modulus / c.p);
    auto P = poun_from_discriminator(zpl, power_expr(e));
    if (P.k() != 1 + (c.p - 1) / s) fail(Errc::InvalidArgument, "unexpected class count");
    return P;
}

PartitionOfUnity poun_from_classes(const Ctx& field, const std::vector<std::vector<Value>>& classes) {
    const Field& F = field.field();
    const std::uint64_t q = F.order();
    if (classes.empty() || classes.size() > q) fail(Errc::InvalidArgument, "bad number of classes");
    std::vector<Value> label(q, q);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].empty()) fail(Errc::InvalidArgument, "empty class");
        for (auto x : classes[i]) {
            if (x >= q || label[x] != q) fail(Errc::InvalidArgument, "classes do not partition the field");
            label[x] = i;
        }
    }
    for (auto l : label)
        if (l == q) fail(Errc::InvalidArgument, "classes do not cover the field");
    Expr f = interpolate(F, 1, label).to_expr();
    return poun_from_discriminator(field, f);
}

std::vector<Expr> compose_indicators(const PartitionOfUnity& P, const Expr& h) {
    std::vector<Expr> out;
    const Expr repl[1] = {h};
    for (auto& l : P.indicators) out.push_back(substitute(l, repl));
    return out;
}

Expr inverse_of_nonvanishing(const Ctx& ctx, const Expr& f, const DomainSpec& domain) {
    std::vector<Value> values;
    for_each_point(ctx, domain, [&](std::span<const Value> x) {
        const Value v = eval(f, ctx, x);
        if (!ctx.is_unit(v)) throw Error(Errc::NotUnitValued, "function vanishes on the domain", {x.begin(), x.end()});
        values.push_back(v);
        return true;
    });
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() == 1) return Expr::constant(ctx.inv(values[0]));
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < values.size(); ++i)
        terms.push_back(Expr::mul({Expr::constant(ctx.inv(values[i])), lagrange_indicator(ctx, f, values, i)}));
    return Expr::add(std::move(terms));
}

Expr power_expr(std::uint64_t r) { return Expr::pow(Expr::var(0), r); }

Expr linearized_expr(const Field& F, std::span<const Value> coeffs) {
    std::vector<Expr> terms;
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) terms.push_back(Expr::mul({Expr::constant(coeffs[i]), Expr::pow(Expr::var(0), e)}));
        e *= F.characteristic();
    }
    if (terms.empty()) return Expr::constant(0);
    return Expr::add(std::move(terms));
}

namespace {

Value apply_linearized(const Field& F, std::span<const Value> coeffs, Value z) {
    Value acc = 0, zp = z;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc = F.add(acc, F.mul(coeffs[i], zp));
        zp = F.pow_u(zp, F.characteristic());
    }
    return acc;
}

}  // namespace

std::vector<std::vector<Value>> linearized_matrix(const Field& F, std::span<const Value> coeffs) {
    const unsigned n = F.degree();
    std::vector<std::vector<Value>> M(n, std::vector<Value>(n, 0));
    Value basis = 1;
    for (unsigned j = 0; j < n; ++j) {
        auto img = F.coeffs(apply_linearized(F, coeffs, basis));
        for (unsigned i = 0; i < n; ++i) M[i][j] = img[i];
        basis *= F.characteristic();
    }
    return M;
}

std::size_t linearized_rank(const Field& F, std::span<const Value> coeffs) {
    return rank(Field::prime(F.characteristic()), linearized_matrix(F, coeffs));
}

// Coefficients b with sum_i b_i e_j^{p^i} = image of e_j, for a Z_p-matrix M.
std::vector<Value> linearized_from_matrix(const Field& F, const std::vector<std::vector<Value>>& M) {
    const unsigned n = F.degree();
    Matrix moore(n, std::vector<Value>(n));
    std::vector<Value> rhs(n);
    Value basis = 1;
    for (unsigned j = 0; j < n; ++j) {
        Value zp = basis;
        for (unsigned i = 0; i < n; ++i) {
            moore[j][i] = zp;
            zp = F.pow_u(zp, F.characteristic());
        }
        std::vector<std::uint64_t> col(n);
        for (unsigned i = 0; i < n; ++i) col[i] = M[i][j];
        rhs[j] = F.pack(col);
        basis *= F.characteristic();
    }
    auto b = solve(F, moore, rhs);
    if (!b) fail(Errc::Singular, "Moore matrix is singular");
    return *b;
}

std::vector<Value> random_linearized_of_rank(const Field& F, std::size_t r, Rng& rng) {
    const unsigned n = F.degree();
    if (r > n) fail(Errc::InvalidArgument, "rank exceeds the extension degree");
    const Field Fp = Field::prime(F.characteristic());
    auto random_invertible = [&]() {
        for (;;) {
            Matrix A(n, std::vector<Value>(n));
            for (auto& row : A)
                for (auto& v : row) v = rng.uniform(Fp.order());
            if (rank(Fp, A) == n) return A;
        }
    };
    Matrix A = random_invertible(), B = random_invertible();
    Matrix M(n, std::vector<Value>(n, 0));
    // M = A * diag(1^r, 0^{n-r}) * B
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            Value s = 0;
            for (std::size_t t = 0; t < r; ++t) s = Fp.add(s, Fp.mul(A[i][t], B[t][j]));
            M[i][j] = s;
        }
    return linearized_from_matrix(F, M);
}

}  // namespace mvmap
