#include "mvmap/parametric.hpp"

#include <algorithm>

#include "mvmap/modarith.hpp"

namespace mvmap {

const char* group_name(Group g) { return g == Group::Units ? "units" : "all"; }

Group group_from_name(const std::string& s) {
    if (s == "units") return Group::Units;
    if (s == "all") return Group::All;
    fail(Errc::Parse, "unknown group '" + s + "'");
}

DomainSpec group_domain(Group g, std::size_t m) { return g == Group::Units ? DomainSpec::units(m) : DomainSpec::all(m); }

namespace {

std::uint64_t unit_order(const Ctx& ctx) { return ctx.field().order() - 1; }

// Exponent representative in [1, q-1], so that 0^e = 0.
std::uint64_t normalize_exp(std::uint64_t e, std::uint64_t m1) {
    e %= m1;
    return e == 0 ? m1 : e;
}

Expr identity_var(std::size_t i) { return Expr::var(i); }

std::vector<Value> slice(std::span<const Value> v, std::size_t off, std::size_t n) {
    return std::vector<Value>(v.begin() + static_cast<std::ptrdiff_t>(off),
                              v.begin() + static_cast<std::ptrdiff_t>(off + n));
}

}  // namespace

// ---------------------------------------------------------------- constructors

ParametricMap parametric_power(const Ctx& ctx, std::size_t l, Expr coeff, Expo exponent, Group group) {
    const std::uint64_t m1 = unit_order(ctx);
    if (var_bound(coeff) > l || var_bound(exponent) > l)
        fail(Errc::InvalidArgument, "coefficient or exponent refers to a non-parameter variable");
    const bool variable = !exponent.is_constant();
    if (group == Group::All && (variable || uses_exponent_level(coeff)))
        fail(Errc::InvalidArgument, "logs of parameters need G = F*");
    const DomainSpec zd = group_domain(group, l);
    try {
        (void)certify_unit_valued(coeff, ctx, zd);
    } catch (const Error& e) {
        if (e.code() != Errc::Counterexample) throw;
        throw Error(Errc::FZero, "coefficient vanishes on the parameter domain", e.witness());
    }
    auto check = [&](std::span<const Value> z) {
        const std::uint64_t e = eval_expo(exponent, ctx, z).r[0];
        if (modarith::gcd(normalize_exp(e, m1), m1) != 1)
            throw Error(Errc::GcdNotOne, "gcd(g(t), q - 1) != 1", {z.begin(), z.end()});
        return true;
    };
    if (variable) for_each_point(ctx, zd, check);
    else check({});
    ParametricMap p;
    p.kind_ = ParametricMap::Kind::Power;
    p.l_ = l;
    p.m_ = 1;
    p.group_ = group;
    p.coeff_ = std::move(coeff);
    p.expo_ = std::move(exponent);
    return p;
}

ParametricMap diagonal(std::vector<ParametricMap> parts) {
    if (parts.empty()) fail(Errc::InvalidArgument, "diagonal map needs at least one part");
    ParametricMap p;
    p.kind_ = ParametricMap::Kind::Diagonal;
    p.l_ = parts[0].params();
    p.group_ = parts[0].group();
    for (auto& q : parts) {
        if (q.params() != p.l_ || q.group() != p.group_) fail(Errc::InvalidArgument, "parts must share parameters and group");
        p.m_ += q.arity();
    }
    p.parts_ = std::move(parts);
    return p;
}

ParametricMap assemble_from_partition(const Ctx& ctx, std::size_t l, std::vector<Expr> g, std::vector<Expr> phi,
                                      std::vector<Expr> chi, std::vector<ParametricMap> zeta, Group group) {
    const std::size_t k = g.size();
    if (k == 0 || phi.size() != k || chi.size() != k || zeta.size() != k)
        fail(Errc::InvalidArgument, "need k indicators, multipliers, shifts and maps");
    const std::size_t m = zeta[0].arity();
    for (auto& z : zeta)
        if (z.params() != l || z.arity() != m || z.group() != group)
            fail(Errc::InvalidArgument, "inner maps must share parameters, arity and group");
    const DomainSpec zd = group_domain(group, l);
    for_each_point(ctx, zd, [&](std::span<const Value> z) {
        std::size_t ones = 0;
        for (auto& gi : g) {
            const Value v = eval(gi, ctx, z);
            if (v == 1) ++ones;
            else if (v != 0) throw Error(Errc::InvalidArgument, "indicator takes a value other than 0 or 1", {z.begin(), z.end()});
        }
        if (ones != 1) throw Error(Errc::InvalidArgument, "indicators do not partition the parameter space", {z.begin(), z.end()});
        for (auto& c : chi) (void)eval(c, ctx, z);
        return true;
    });
    for (auto& f : phi) {
        try {
            (void)certify_unit_valued(f, ctx, zd);
        } catch (const Error& e) {
            if (e.code() != Errc::Counterexample) throw;
            throw Error(Errc::NotUnitValued, "multiplier vanishes on the parameter domain", e.witness());
        }
    }
    ParametricMap p;
    p.kind_ = ParametricMap::Kind::Assembled;
    p.l_ = l;
    p.m_ = m;
    p.group_ = group;
    p.ind_ = std::move(g);
    p.phi_ = std::move(phi);
    p.chi_ = std::move(chi);
    p.parts_ = std::move(zeta);
    return p;
}

// ---------------------------------------------------------------- evaluation

std::uint64_t ParametricMap::exponent_value(const Ctx& ctx, std::span<const Value> z) const {
    return normalize_exp(eval_expo(expo_, ctx, z).r[0], unit_order(ctx));
}

std::vector<Value> ParametricMap::forward(const Ctx& ctx, std::span<const Value> z, std::span<const Value> x) const {
    if (z.size() != l_ || x.size() != m_) fail(Errc::InvalidArgument, "wrong number of arguments");
    const DomainSpec zd = group_domain(group_, l_);
    if (!zd.contains(ctx, z) || !group_domain(group_, m_).contains(ctx, x))
        fail(Errc::DomainViolation, "argument outside G");
    switch (kind_) {
        case Kind::Power: {
            const Value c = eval(coeff_, ctx, z);
            return {ctx.mul(c, ctx.pow_u(x[0], exponent_value(ctx, z)))};
        }
        case Kind::Diagonal: {
            std::vector<Value> out;
            std::size_t off = 0;
            for (auto& p : parts_) {
                auto y = p.forward(ctx, z, slice(x, off, p.arity()));
                out.insert(out.end(), y.begin(), y.end());
                off += p.arity();
            }
            return out;
        }
        case Kind::Assembled: {
            std::vector<Value> out(m_, 0);
            for (std::size_t i = 0; i < parts_.size(); ++i) {
                const Value gi = eval(ind_[i], ctx, z);
                const Value ph = eval(phi_[i], ctx, z);
                const Value ch = eval(chi_[i], ctx, z);
                auto y = parts_[i].forward(ctx, z, x);
                const Value w = ctx.mul(gi, ph);
                for (std::size_t j = 0; j < m_; ++j) out[j] = ctx.add(out[j], ctx.mul(w, ctx.add(y[j], ch)));
            }
            return out;
        }
    }
    return {};
}

std::optional<std::vector<Value>> ParametricMap::inverse(const Ctx& ctx, std::span<const Value> z,
                                                         std::span<const Value> y) const {
    if (z.size() != l_ || y.size() != m_) fail(Errc::InvalidArgument, "wrong number of arguments");
    for (auto v : y)
        if (!ctx.contains(v)) return std::nullopt;
    if (!group_domain(group_, l_).contains(ctx, z)) return std::nullopt;
    switch (kind_) {
        case Kind::Power: {
            const Value c = eval(coeff_, ctx, z);
            if (c == 0) return std::nullopt;
            if (group_ == Group::Units && y[0] == 0) return std::nullopt;
            const std::uint64_t m1 = unit_order(ctx);
            const std::uint64_t e = exponent_value(ctx, z);
            const std::uint64_t einv = m1 == 1 ? 1 : normalize_exp(*modarith::invmod(e % m1, m1), m1);
            return std::vector<Value>{ctx.pow_u(ctx.mul(ctx.inv(c), y[0]), einv)};
        }
        case Kind::Diagonal: {
            std::vector<Value> out;
            std::size_t off = 0;
            for (auto& p : parts_) {
                auto x = p.inverse(ctx, z, slice(y, off, p.arity()));
                if (!x) return std::nullopt;
                out.insert(out.end(), x->begin(), x->end());
                off += p.arity();
            }
            return out;
        }
        case Kind::Assembled: {
            std::size_t cls = parts_.size();
            for (std::size_t i = 0; i < parts_.size(); ++i)
                if (eval(ind_[i], ctx, z) == 1) {
                    cls = i;
                    break;
                }
            if (cls == parts_.size()) return std::nullopt;
            const Value ph = eval(phi_[cls], ctx, z);
            if (!ctx.is_unit(ph)) return std::nullopt;
            const Value phinv = ctx.inv(ph);
            const Value ch = eval(chi_[cls], ctx, z);
            std::vector<Value> yy(m_);
            for (std::size_t j = 0; j < m_; ++j) yy[j] = ctx.sub(ctx.mul(phinv, y[j]), ch);
            return parts_[cls].inverse(ctx, z, yy);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- expression forms

namespace {

// Keeps parameters, moves the inputs of a part to their slot in the whole.
std::vector<std::size_t> part_map(std::size_t l, std::size_t m, std::size_t off) {
    std::vector<std::size_t> map(l + m);
    for (std::size_t i = 0; i < l; ++i) map[i] = i;
    for (std::size_t t = 0; t < m; ++t) map[l + t] = l + off + t;
    return map;
}

}  // namespace

std::vector<Expr> ParametricMap::forward_exprs(const Ctx& ctx) const {
    switch (kind_) {
        case Kind::Power: {
            Expr xv = identity_var(l_);
            if (expo_.is_constant()) {
                const std::uint64_t e = normalize_exp(eval_expo(expo_, ctx, {}).r[0], unit_order(ctx));
                return {Expr::mul({coeff_, e == 1 ? xv : Expr::pow(xv, e)})};
            }
            return {Expr::mul({coeff_, Expr::pow_var(xv, expo_)})};
        }
        case Kind::Diagonal: {
            std::vector<Expr> out;
            std::size_t off = 0;
            for (auto& p : parts_) {
                auto map = part_map(l_, p.arity(), off);
                for (auto& e : p.forward_exprs(ctx)) out.push_back(rename_vars(e, map));
                off += p.arity();
            }
            return out;
        }
        case Kind::Assembled: {
            std::vector<std::vector<Expr>> inner;
            for (auto& p : parts_) inner.push_back(p.forward_exprs(ctx));
            std::vector<Expr> out;
            for (std::size_t j = 0; j < m_; ++j) {
                std::vector<Expr> terms;
                for (std::size_t i = 0; i < parts_.size(); ++i)
                    terms.push_back(Expr::mul({ind_[i], phi_[i], Expr::add({inner[i][j], chi_[i]})}));
                out.push_back(Expr::add(std::move(terms)));
            }
            return out;
        }
    }
    return {};
}

std::optional<std::vector<Expr>> ParametricMap::inverse_exprs(const Ctx& ctx) const {
    const std::uint64_t q = ctx.field().order();
    switch (kind_) {
        case Kind::Power: {
            if (!expo_.is_constant()) return std::nullopt;
            const std::uint64_t m1 = q - 1;
            const std::uint64_t e = normalize_exp(eval_expo(expo_, ctx, {}).r[0], m1);
            const std::uint64_t einv = m1 == 1 ? 1 : normalize_exp(*modarith::invmod(e % m1, m1), m1);
            Expr w = Expr::mul({Expr::pow(coeff_, q - 2), identity_var(l_)});
            return std::vector<Expr>{einv == 1 ? w : Expr::pow(w, einv)};
        }
        case Kind::Diagonal: {
            std::vector<Expr> out;
            std::size_t off = 0;
            for (auto& p : parts_) {
                auto inv = p.inverse_exprs(ctx);
                if (!inv) return std::nullopt;
                auto map = part_map(l_, p.arity(), off);
                for (auto& e : *inv) out.push_back(rename_vars(e, map));
                off += p.arity();
            }
            return out;
        }
        case Kind::Assembled: {
            std::vector<std::vector<Expr>> inner;
            for (auto& p : parts_) {
                auto inv = p.inverse_exprs(ctx);
                if (!inv) return std::nullopt;
                inner.push_back(std::move(*inv));
            }
            const Expr minus_one = Expr::constant(ctx.neg(1));
            std::vector<Expr> out(m_);
            std::vector<std::vector<Expr>> terms(m_);
            for (std::size_t i = 0; i < parts_.size(); ++i) {
                std::vector<Expr> repl;
                for (std::size_t t = 0; t < l_; ++t) repl.push_back(Expr::var(t));
                for (std::size_t j = 0; j < m_; ++j)
                    repl.push_back(Expr::add({Expr::mul({Expr::pow(phi_[i], q - 2), Expr::var(l_ + j)}),
                                              Expr::mul({minus_one, chi_[i]})}));
                for (std::size_t j = 0; j < m_; ++j)
                    terms[j].push_back(Expr::mul({ind_[i], substitute(inner[i][j], repl)}));
            }
            for (std::size_t j = 0; j < m_; ++j) out[j] = Expr::add(std::move(terms[j]));
            return out;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- serialization

Sexp ParametricMap::to_sexp() const {
    Sexp s = Sexp::make_list();
    auto atom = [](const std::string& a) { return Sexp::make_atom(a); };
    switch (kind_) {
        case Kind::Power:
            s.list = {atom("ppow"), atom(std::to_string(l_)), atom(group_name(group_)), mvmap::to_sexp(coeff_),
                      parse_sexp(to_string(expo_))};
            break;
        case Kind::Diagonal:
            s.list = {atom("diag")};
            for (auto& p : parts_) s.list.push_back(p.to_sexp());
            break;
        case Kind::Assembled:
            s.list = {atom("assembled"), atom(std::to_string(l_)), atom(std::to_string(m_)), atom(group_name(group_))};
            for (std::size_t i = 0; i < parts_.size(); ++i)
                s.list.push_back(Sexp::make_list({atom("class"), mvmap::to_sexp(ind_[i]), mvmap::to_sexp(phi_[i]),
                                                  mvmap::to_sexp(chi_[i]), parts_[i].to_sexp()}));
            break;
    }
    return s;
}

ParametricMap ParametricMap::from_sexp(const Ctx& ctx, const Sexp& s) {
    if (s.head_is("ppow")) {
        if (s.list.size() != 5) fail(Errc::Parse, "(ppow l group coeff expo) malformed");
        const std::size_t l = s.list[1].as_uint();
        if (!s.list[2].is_atom) fail(Errc::Parse, "group must be an atom");
        return parametric_power(ctx, l, expr_from_sexp(s.list[3], ctx, l), expo_from_sexp(s.list[4], ctx, l),
                                group_from_name(s.list[2].atom));
    }
    if (s.head_is("diag")) {
        std::vector<ParametricMap> parts;
        for (std::size_t i = 1; i < s.list.size(); ++i) parts.push_back(from_sexp(ctx, s.list[i]));
        return diagonal(std::move(parts));
    }
    if (s.head_is("assembled")) {
        if (s.list.size() < 5 || !s.list[3].is_atom) fail(Errc::Parse, "(assembled l m group class...) malformed");
        const std::size_t l = s.list[1].as_uint();
        std::vector<Expr> g, phi, chi;
        std::vector<ParametricMap> zeta;
        for (std::size_t i = 4; i < s.list.size(); ++i) {
            const Sexp& c = s.list[i];
            if (!c.head_is("class") || c.list.size() != 5) fail(Errc::Parse, "(class g phi chi zeta) malformed");
            g.push_back(expr_from_sexp(c.list[1], ctx, l));
            phi.push_back(expr_from_sexp(c.list[2], ctx, l));
            chi.push_back(expr_from_sexp(c.list[3], ctx, l));
            zeta.push_back(from_sexp(ctx, c.list[4]));
        }
        auto p = assemble_from_partition(ctx, l, std::move(g), std::move(phi), std::move(chi), std::move(zeta),
                                         group_from_name(s.list[3].atom));
        if (p.arity() != s.list[2].as_uint()) fail(Errc::Parse, "assembled arity mismatch");
        return p;
    }
    fail(Errc::Parse, "unknown parametric map form");
}

// ---------------------------------------------------------------- triangular

TriangularScheme::TriangularScheme(const Ctx& ctx, std::vector<UniBijection> f, std::vector<UniBijection> g,
                                   std::vector<ParametricMap> h, Group group)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)), group_(group) {
    const std::size_t m = f_.size();
    if (m == 0 || g_.size() != m || h_.size() != m) fail(Errc::InvalidArgument, "need m maps of each kind");
    const std::uint64_t q = ctx.field().order();
    for (std::size_t i = 0; i < m; ++i) {
        if (h_[i].params() != m - 1 || h_[i].arity() != 1 || h_[i].group() != group)
            fail(Errc::InvalidArgument, "h_i must take m - 1 parameters and one input in G");
        for (const UniBijection* b : {&f_[i], &g_[i]}) {
            if (b->carrier().kind != CarrierKind::Field || b->carrier().ambient != q)
                fail(Errc::InvalidArgument, "f_i and g_i must permute the field");
            if (group == Group::Units && b->apply(0) != 0) fail(Errc::InvalidArgument, "f_i and g_i must fix 0 for G = F*");
        }
    }
}

std::vector<Value> TriangularScheme::forward(const Ctx& ctx, std::span<const Value> x) const {
    const std::size_t m = arity();
    if (x.size() != m || !group_domain(group_, m).contains(ctx, x)) fail(Errc::DomainViolation, "argument outside G^m");
    std::vector<Value> zeta(m);
    std::vector<Value> params;
    for (std::size_t i = m; i-- > 0;) {
        params.assign(zeta.begin() + static_cast<std::ptrdiff_t>(i + 1), zeta.end());
        params.insert(params.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
        const Value in[1] = {f_[i].apply(x[i])};
        zeta[i] = h_[i].forward(ctx, params, in)[0];
    }
    std::vector<Value> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = g_[i].apply(zeta[i]);
    return y;
}

std::optional<std::vector<Value>> TriangularScheme::inverse(const Ctx& ctx, std::span<const Value> y) const {
    const std::size_t m = arity();
    if (y.size() != m) fail(Errc::InvalidArgument, "wrong number of arguments");
    std::vector<Value> eps(m), x(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!ctx.contains(y[i])) return std::nullopt;
        eps[i] = g_[i].invert(y[i]);
    }
    std::vector<Value> params;
    for (std::size_t i = 0; i < m; ++i) {
        params.assign(eps.begin() + static_cast<std::ptrdiff_t>(i + 1), eps.end());
        params.insert(params.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
        const Value in[1] = {eps[i]};
        auto d = h_[i].inverse(ctx, params, in);
        if (!d) return std::nullopt;
        x[i] = f_[i].invert((*d)[0]);
    }
    if (!group_domain(group_, m).contains(ctx, x)) return std::nullopt;
    return x;
}

std::vector<Expr> TriangularScheme::forward_exprs(const Ctx& ctx) const {
    const std::size_t m = arity();
    std::vector<Expr> zeta(m);
    for (std::size_t i = m; i-- > 0;) {
        if (!f_[i].forward_expr || !g_[i].forward_expr) fail(Errc::InverseNotExpressible, "f_i or g_i lacks an expression");
        std::vector<Expr> repl(zeta.begin() + static_cast<std::ptrdiff_t>(i + 1), zeta.end());
        for (std::size_t t = 0; t < i; ++t) repl.push_back(Expr::var(t));
        const Expr xi[1] = {Expr::var(i)};
        repl.push_back(substitute(*f_[i].forward_expr, xi));
        zeta[i] = substitute(h_[i].forward_exprs(ctx)[0], repl);
    }
    std::vector<Expr> out;
    for (std::size_t i = 0; i < m; ++i) {
        const Expr z[1] = {zeta[i]};
        out.push_back(substitute(*g_[i].forward_expr, z));
    }
    return out;
}

Sexp TriangularScheme::to_sexp() const {
    Sexp s = Sexp::make_list({Sexp::make_atom("tri"), Sexp::make_atom(group_name(group_))});
    for (std::size_t i = 0; i < arity(); ++i) {
        if (!f_[i].spec || !g_[i].spec) fail(Errc::InvalidArgument, "triangular parts lack a serializable recipe");
        s.list.push_back(Sexp::make_list({Sexp::make_atom("step"), *f_[i].spec, *g_[i].spec, h_[i].to_sexp()}));
    }
    return s;
}

TriangularScheme TriangularScheme::from_sexp(const Ctx& ctx, const Sexp& s) {
    if (!s.head_is("tri") || s.list.size() < 3 || !s.list[1].is_atom) fail(Errc::Parse, "(tri group step...) malformed");
    std::vector<UniBijection> f, g;
    std::vector<ParametricMap> h;
    for (std::size_t i = 2; i < s.list.size(); ++i) {
        const Sexp& st = s.list[i];
        if (!st.head_is("step") || st.list.size() != 4) fail(Errc::Parse, "(step f g h) malformed");
        f.push_back(uni_from_sexp(ctx, st.list[1]));
        g.push_back(uni_from_sexp(ctx, st.list[2]));
        h.push_back(ParametricMap::from_sexp(ctx, st.list[3]));
    }
    return TriangularScheme(ctx, std::move(f), std::move(g), std::move(h), group_from_name(s.list[1].atom));
}

// ---------------------------------------------------------------- random generators

namespace {

std::uint64_t random_unit_mod(std::uint64_t m, Rng& rng) {
    if (m == 1) return 1;
    for (;;) {
        const std::uint64_t e = rng.range(1, m);
        if (modarith::gcd(e, m) == 1) return e;
    }
}

// c * (v_j^r - a) with a outside the image of z^r; never zero on F.
Expr nonvanishing_factor(const Field& F, std::size_t j, Rng& rng) {
    const std::uint64_t m1 = F.order() - 1;
    std::vector<std::uint64_t> rs;
    for (auto d : modarith::divisors(m1))
        if (d >= 2) rs.push_back(d);
    if (rs.empty()) return Expr::constant(1);
    const std::uint64_t r = rs[rng.uniform(rs.size())];
    std::vector<bool> image(F.order(), false);
    for (Value z = 0; z < F.order(); ++z) image[F.pow_u(z, r)] = true;
    std::vector<Value> outside;
    for (Value a = 0; a < F.order(); ++a)
        if (!image[a]) outside.push_back(a);
    const Value a = outside[rng.uniform(outside.size())];
    return Expr::add({Expr::pow(Expr::var(j), r), Expr::constant(F.neg(a))});
}

}  // namespace

Expr random_group_valued(const Ctx& ctx, std::size_t arity, Group group, bool allow_exponent_level, Rng& rng) {
    const Field& F = ctx.field();
    const std::uint64_t q = F.order();
    if (group == Group::Units) {
        std::vector<Expr> factors{Expr::constant(rng.range(1, q - 1))};
        bool any = false;
        for (std::size_t j = 0; j < arity; ++j) {
            const std::uint64_t s = q > 2 ? rng.uniform(q - 1) : 1;
            if (s == 0) continue;
            factors.push_back(s == 1 ? Expr::var(j) : Expr::pow(Expr::var(j), s));
            any = true;
        }
        if (allow_exponent_level && arity >= 2 && q > 3) {
            const std::size_t a = rng.uniform(arity);
            std::size_t b = rng.uniform(arity - 1);
            if (b >= a) ++b;
            Expo ex = Expo::add({Expo::constant(static_cast<std::int64_t>(rng.uniform(q - 1))),
                                 Expo::mul({Expo::constant(static_cast<std::int64_t>(rng.range(1, q - 2))),
                                            Expo::log_var(b)})});
            factors.push_back(Expr::pow_var(Expr::var(a), ex));
            any = true;
        }
        if (!any && arity > 0) factors.push_back(Expr::var(0));
        return Expr::mul(std::move(factors));
    }
    std::vector<Expr> terms;
    for (int t = 0; t < 2; ++t) {
        std::vector<Expr> f{Expr::constant(rng.range(1, q - 1))};
        for (std::size_t j = 0; j < arity; ++j) {
            const std::uint64_t s = rng.uniform(q);
            if (s == 1) f.push_back(Expr::var(j));
            else if (s > 1) f.push_back(Expr::pow(Expr::var(j), s));
        }
        terms.push_back(Expr::mul(std::move(f)));
    }
    terms.push_back(Expr::constant(rng.uniform(q)));
    return Expr::add(std::move(terms));
}

Expr random_unit_coeff(const Ctx& ctx, std::size_t l, Group group, Rng& rng) {
    const Field& F = ctx.field();
    const std::uint64_t q = F.order();
    std::vector<Expr> factors{Expr::constant(rng.range(1, q - 1))};
    if (l == 0) return factors[0];
    if (group == Group::Units) {
        for (std::size_t j = 0; j < l; ++j) {
            const std::uint64_t s = q > 2 ? rng.uniform(q - 1) : 0;
            if (s == 1) factors.push_back(Expr::var(j));
            else if (s > 1) factors.push_back(Expr::pow(Expr::var(j), s));
        }
    } else {
        factors.push_back(nonvanishing_factor(F, rng.uniform(l), rng));
    }
    return Expr::mul(std::move(factors));
}

Expo random_unit_exponent(const Ctx& ctx, std::size_t l, bool variable, Rng& rng) {
    const std::uint64_t m1 = unit_order(ctx);
    if (variable && l > 0 && m1 > 2) {
        std::uint64_t points = 1;
        for (std::size_t j = 0; j < l && points <= 4096; ++j) points *= m1;
        if (points <= 4096) {
            const DomainSpec zd = DomainSpec::units(l);
            for (int attempt = 0; attempt < 4000; ++attempt) {
                std::vector<Expo> terms{Expo::constant(static_cast<std::int64_t>(rng.uniform(m1)))};
                bool varies = false;
                for (std::size_t j = 0; j < l; ++j) {
                    const auto c1 = rng.uniform(m1), c2 = rng.uniform(m1);
                    if (c1) terms.push_back(Expo::mul({Expo::constant(static_cast<std::int64_t>(c1)), Expo::log_var(j)}));
                    if (c2)
                        terms.push_back(Expo::mul({Expo::constant(static_cast<std::int64_t>(c2)),
                                                   Expo::pow(Expo::log_var(j), 2)}));
                    varies = varies || c1 || c2;
                }
                if (!varies) continue;
                Expo g = Expo::add(std::move(terms));
                bool ok = true;
                std::uint64_t first = 0;
                bool non_constant = false;
                for_each_point(ctx, zd, [&](std::span<const Value> z) {
                    const std::uint64_t e = normalize_exp(eval_expo(g, ctx, z).r[0], m1);
                    if (modarith::gcd(e, m1) != 1) {
                        ok = false;
                        return false;
                    }
                    if (z[0] == 1 && std::all_of(z.begin(), z.end(), [](Value v) { return v == 1; })) first = e;
                    else if (e != first) non_constant = true;
                    return true;
                });
                if (ok && non_constant) return g;
            }
        }
    }
    return Expo::constant(static_cast<std::int64_t>(random_unit_mod(m1, rng)));
}

ParametricMap random_power_map(const Ctx& ctx, std::size_t l, Group group, bool variable_exponent, Rng& rng) {
    Expr c = random_unit_coeff(ctx, l, group, rng);
    Expo e = random_unit_exponent(ctx, l, variable_exponent && group == Group::Units, rng);
    return parametric_power(ctx, l, std::move(c), std::move(e), group);
}

TriangularScheme random_triangular(const Ctx& ctx, std::size_t m, Group group, Rng& rng) {
    const std::uint64_t m1 = unit_order(ctx);
    std::vector<UniBijection> f, g;
    std::vector<ParametricMap> h;
    for (std::size_t i = 0; i < m; ++i) {
        f.push_back(perm_power(ctx, random_unit_mod(m1, rng)));
        g.push_back(perm_power(ctx, random_unit_mod(m1, rng)));
        h.push_back(random_power_map(ctx, m - 1, group, group == Group::Units, rng));
    }
    return TriangularScheme(ctx, std::move(f), std::move(g), std::move(h), group);
}

// ---------------------------------------------------------------- hybrid multivariate

std::size_t phi_order(const Ctx& ctx, std::span<const std::size_t> perm, std::span<const std::uint64_t> exps) {
    const std::size_t m = perm.size();
    const std::uint64_t m1 = unit_order(ctx);
    if (exps.size() != m || m == 0) fail(Errc::InvalidArgument, "perm and exponents must have equal positive length");
    std::vector<bool> seen(m, false);
    for (auto p : perm) {
        if (p >= m || seen[p]) fail(Errc::InvalidArgument, "perm is not a permutation");
        seen[p] = true;
    }
    for (auto e : exps)
        if (modarith::gcd(normalize_exp(e, m1), m1) != 1) fail(Errc::GcdNotOne, "coordinate exponent not invertible");
    std::vector<std::size_t> pi(m);
    std::vector<std::uint64_t> E(m, 1 % m1);
    for (std::size_t i = 0; i < m; ++i) pi[i] = i;
    for (std::size_t j = 1; j <= 1000000; ++j) {
        std::vector<std::size_t> npi(m);
        std::vector<std::uint64_t> nE(m);
        for (std::size_t i = 0; i < m; ++i) {
            npi[i] = pi[perm[i]];
            nE[i] = modarith::mulmod(E[perm[i]], exps[i] % m1, m1);
        }
        pi = std::move(npi);
        E = std::move(nE);
        bool id = true;
        for (std::size_t i = 0; i < m && id; ++i) id = pi[i] == i && E[i] == 1 % m1;
        if (id) return j;
    }
    fail(Errc::OrderWrong, "order of Phi exceeds the search bound");
}

Expr symmetric_product_hash(std::size_t m, std::size_t rho, std::span<const std::uint64_t> s) {
    if (s.size() != m) fail(Errc::InvalidArgument, "need one hash exponent per coordinate");
    std::vector<Expr> f;
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (s[j] == 0) continue;
            f.push_back(s[j] == 1 ? Expr::var(i * m + j) : Expr::pow(Expr::var(i * m + j), s[j]));
        }
    if (f.empty()) return Expr::constant(1);
    return Expr::mul(std::move(f));
}

HybridMvMap::HybridMvMap(const Ctx& ctx, std::vector<std::size_t> perm, std::vector<std::uint64_t> exps, Expr hash,
                         PartitionOfUnity P, std::vector<std::size_t> sigma, std::optional<TriangularScheme> eta)
    : perm_(std::move(perm)), exps_(std::move(exps)), rho_(phi_order(ctx, perm_, exps_)), hash_(std::move(hash)),
      P_(std::move(P)), sigma_(std::move(sigma)), eta_(std::move(eta)) {
    const std::size_t m = perm_.size();
    if (P_.class_of.size() != ctx.field().order()) fail(Errc::InvalidArgument, "partition must live on the field");
    if (P_.k() > rho_) fail(Errc::InvalidArgument, "partition has more classes than the order of Phi");
    if (sigma_.size() != rho_) fail(Errc::InvalidArgument, "sigma must permute 1..rho");
    std::vector<bool> seen(rho_ + 1, false);
    for (auto s : sigma_) {
        if (s == 0 || s > rho_ || seen[s]) fail(Errc::InvalidArgument, "sigma must permute 1..rho");
        seen[s] = true;
    }
    if (eta_ && (eta_->arity() != m || eta_->group() != Group::Units))
        fail(Errc::InvalidArgument, "eta must be a bijection of (F*)^m");
    if (var_bound(hash_) > m * rho_) fail(Errc::InvalidArgument, "hash refers to too many variables");
    for_each_point(ctx, DomainSpec::units(m), [&](std::span<const Value> x) {
        auto fx = phi_power(ctx, x, 1);
        if (this->hash(ctx, fx) != this->hash(ctx, x)) throw Error(Errc::HashNotInvariant, "h(Phi(x)) != h(x)", {x.begin(), x.end()});
        return true;
    });
}

std::vector<Value> HybridMvMap::phi_power(const Ctx& ctx, std::span<const Value> x, std::size_t j) const {
    std::vector<Value> cur(x.begin(), x.end()), next(cur.size());
    for (std::size_t t = 0; t < j; ++t) {
        for (std::size_t i = 0; i < cur.size(); ++i) next[i] = ctx.pow_u(cur[perm_[i]], exps_[i]);
        cur.swap(next);
    }
    return cur;
}

Value HybridMvMap::hash(const Ctx& ctx, std::span<const Value> x) const {
    std::vector<Value> args;
    std::vector<Value> cur(x.begin(), x.end());
    for (std::size_t i = 0; i < rho_; ++i) {
        args.insert(args.end(), cur.begin(), cur.end());
        cur = phi_power(ctx, cur, 1);
    }
    return eval(hash_, ctx, args);
}

std::vector<Value> HybridMvMap::forward(const Ctx& ctx, std::span<const Value> x) const {
    const std::size_t m = arity();
    if (x.size() != m || !DomainSpec::units(m).contains(ctx, x)) fail(Errc::DomainViolation, "argument outside (F*)^m");
    const Value hv = hash(ctx, x);
    std::vector<Value> out(m, 0);
    for (std::size_t i = 0; i < P_.k(); ++i) {
        const Value l = P_.tables[i][hv];
        if (!l) continue;
        auto fx = phi_power(ctx, x, sigma_[i] % rho_);
        auto y = eta_ ? eta_->forward(ctx, fx) : fx;
        for (std::size_t j = 0; j < m; ++j) out[j] = ctx.add(out[j], ctx.mul(l, y[j]));
    }
    return out;
}

std::optional<std::vector<Value>> HybridMvMap::inverse(const Ctx& ctx, std::span<const Value> y) const {
    const std::size_t m = arity();
    if (y.size() != m || !DomainSpec::units(m).contains(ctx, y)) return std::nullopt;
    std::vector<Value> w(y.begin(), y.end());
    if (eta_) {
        auto inv = eta_->inverse(ctx, y);
        if (!inv) return std::nullopt;
        w = *inv;
    }
    const Value hv = hash(ctx, w);
    std::vector<Value> out(m, 0);
    for (std::size_t i = 0; i < P_.k(); ++i) {
        const Value l = P_.tables[i][hv];
        if (!l) continue;
        auto x = phi_power(ctx, w, (rho_ - sigma_[i] % rho_) % rho_);
        for (std::size_t j = 0; j < m; ++j) out[j] = ctx.add(out[j], ctx.mul(l, x[j]));
    }
    return out;
}

}  // namespace mvmap
