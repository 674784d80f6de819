#include "mvmap/poly.hpp"

namespace mvmap {

Value DensePoly::eval(const Field& F, std::span<const Value> x) const {
    if (x.size() != m) fail(Errc::InvalidArgument, "wrong number of arguments");
    // Powers table per variable, then a direct sum over nonzero terms.
    std::vector<std::vector<Value>> pw(m, std::vector<Value>(q));
    for (std::size_t j = 0; j < m; ++j) {
        pw[j][0] = 1;
        for (std::uint64_t e = 1; e < q; ++e) pw[j][e] = F.mul(pw[j][e - 1], x[j]);
    }
    Value acc = 0;
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0) continue;
        Value t = coeffs[idx];
        std::size_t r = idx;
        for (std::size_t j = 0; j < m; ++j) {
            t = F.mul(t, pw[j][r % q]);
            r /= q;
        }
        acc = F.add(acc, t);
    }
    return acc;
}

std::size_t DensePoly::term_count() const {
    std::size_t n = 0;
    for (auto c : coeffs) n += c != 0;
    return n;
}

Expr DensePoly::to_expr() const {
    std::vector<Expr> terms;
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0) continue;
        std::vector<Expr> f;
        f.push_back(Expr::constant(coeffs[idx]));
        std::size_t r = idx;
        for (std::size_t j = 0; j < m; ++j) {
            auto e = r % q;
            r /= q;
            if (e == 1) f.push_back(Expr::var(j));
            else if (e > 1) f.push_back(Expr::pow(Expr::var(j), e));
        }
        terms.push_back(Expr::mul(std::move(f)));
    }
    if (terms.empty()) return Expr::constant(0);
    return Expr::add(std::move(terms));
}

DensePoly interpolate(const Field& F, std::size_t m, std::vector<Value> values) {
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < m; ++j) total *= q;
    if (values.size() != total) fail(Errc::InvalidArgument, "value table has the wrong size");

    // For a univariate table v: c_0 = v(0), c_k = -sum_a v(a) a^{q-1-k} for k >= 1 (0^0 = 1).
    std::vector<std::vector<Value>> apow(q, std::vector<Value>(q));
    for (Value a = 0; a < q; ++a)
        for (std::uint64_t e = 0; e < q; ++e) apow[a][e] = F.pow_u(a, e);

    std::vector<Value> line(q), out(q);
    std::uint64_t stride = 1;
    for (std::size_t axis = 0; axis < m; ++axis) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t a = 0; a < q; ++a) line[a] = values[base + off + a * stride];
                out[0] = line[0];
                for (std::uint64_t k = 1; k < q; ++k) {
                    Value s = 0;
                    for (Value a = 0; a < q; ++a)
                        if (line[a]) s = F.add(s, F.mul(line[a], apow[a][q - 1 - k]));
                    out[k] = F.neg(s);
                }
                for (std::uint64_t k = 0; k < q; ++k) values[base + off + k * stride] = out[k];
            }
        }
        stride = block;
    }
    return DensePoly{m, q, std::move(values)};
}

namespace {

DensePoly expand_impl(const Expr& e, const Ctx& ctx, std::size_t m, bool units_only, std::uint64_t bound) {
    const Field& F = ctx.field();
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (total > bound / q) fail(Errc::TooLarge, "q^m exceeds the expansion bound");
        total *= q;
    }
    std::vector<Value> values(total, 0);
    std::vector<Value> x(m, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        bool skip = false;
        for (std::size_t j = 0; j < m; ++j) {
            x[j] = r % q;
            r /= q;
            if (units_only && x[j] == 0) skip = true;
        }
        if (!skip) values[idx] = eval(e, ctx, x);
    }
    return interpolate(F, m, std::move(values));
}

}  // namespace

DensePoly expand_to_poly(const Expr& e, const Ctx& ctx, std::size_t m, std::uint64_t bound) {
    return expand_impl(e, ctx, m, false, bound);
}

DensePoly expand_to_poly(const Expr& e, const Ctx& ctx, const DomainSpec& domain, std::uint64_t bound) {
    if (domain.is_full()) return expand_impl(e, ctx, domain.arity(), false, bound);
    if (ctx.is_field() && domain.is_units()) return expand_impl(e, ctx, domain.arity(), true, bound);
    fail(Errc::DomainNotFull, "expansion needs the full carrier (or all-units coordinates)");
}

}  // namespace mvmap
