#include "mvmap/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mvmap/modarith.hpp"

namespace mvmap {

// ---------------------------------------------------------------- builders

Expo::Expo() : n_(std::make_shared<const Node>()) {}

Expo Expo::constant(std::int64_t k) {
    Node n;
    n.op = ExpoOp::Const;
    n.k = k;
    return Expo(std::make_shared<const Node>(std::move(n)));
}

Expo Expo::log_var(std::size_t i) {
    Node n;
    n.op = ExpoOp::Log;
    n.var = i;
    return Expo(std::make_shared<const Node>(std::move(n)));
}

Expo Expo::log_let(std::string name) {
    Node n;
    n.op = ExpoOp::Log;
    n.atom_is_let = true;
    n.name = std::move(name);
    return Expo(std::make_shared<const Node>(std::move(n)));
}

Expo Expo::add(std::vector<Expo> kids) {
    if (kids.size() == 1) return kids[0];
    Node n;
    n.op = ExpoOp::Add;
    n.kids = std::move(kids);
    return Expo(std::make_shared<const Node>(std::move(n)));
}

Expo Expo::mul(std::vector<Expo> kids) {
    if (kids.size() == 1) return kids[0];
    Node n;
    n.op = ExpoOp::Mul;
    n.kids = std::move(kids);
    return Expo(std::make_shared<const Node>(std::move(n)));
}

Expo Expo::pow(Expo base, std::uint64_t k) {
    Node n;
    n.op = ExpoOp::Pow;
    n.k = static_cast<std::int64_t>(k);
    n.kids.push_back(std::move(base));
    return Expo(std::make_shared<const Node>(std::move(n)));
}

bool Expo::is_constant() const {
    if (op() == ExpoOp::Log) return false;
    for (auto& k : n_->kids)
        if (!k.is_constant()) return false;
    return true;
}

Expr::Expr() : n_(std::make_shared<const Node>()) {}

Expr Expr::constant(Value v) {
    Node n;
    n.op = Op::Const;
    n.value = v;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::var(std::size_t i) {
    Node n;
    n.op = Op::Var;
    n.var = i;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::let_var(std::string name) {
    Node n;
    n.op = Op::LetVar;
    n.name = std::move(name);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::add(std::vector<Expr> kids) {
    if (kids.size() == 1) return kids[0];
    Node n;
    n.op = Op::Add;
    n.kids = std::move(kids);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::mul(std::vector<Expr> kids) {
    if (kids.size() == 1) return kids[0];
    Node n;
    n.op = Op::Mul;
    n.kids = std::move(kids);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::pow(Expr base, std::uint64_t k) {
    Node n;
    n.op = Op::Pow;
    n.exponent = k;
    n.kids.push_back(std::move(base));
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::pow_var(Expr base, Expo exponent) {
    Node n;
    n.op = Op::PowVar;
    n.kids.push_back(std::move(base));
    n.expo = std::move(exponent);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::let_unit(std::string name, Expr bound, Expr body) {
    Node n;
    n.op = Op::Let;
    n.name = std::move(name);
    n.kids.push_back(std::move(bound));
    n.kids.push_back(std::move(body));
    return Expr(std::make_shared<const Node>(std::move(n)));
}

// ---------------------------------------------------------------- evaluation

namespace {

struct Evaluator {
    const Ctx& ctx;
    std::span<const Value> args;
    std::vector<std::pair<const std::string*, Value>> env;

    Value lookup(const std::string& name) const {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (*it->first == name) return it->second;
        fail(Errc::InvalidArgument, "unbound name '" + name + "'");
    }

    Value arg(std::size_t i) const {
        if (i >= args.size()) fail(Errc::InvalidArgument, "variable v" + std::to_string(i) + " has no value");
        return args[i];
    }

    ExpoVal expo(const Expo& x) {
        const auto& n = x.node();
        const std::size_t m = ctx.expo_components();
        switch (n.op) {
            case ExpoOp::Const: return ctx.expo_const(n.k);
            case ExpoOp::Log: return ctx.port(n.atom_is_let ? lookup(n.name) : arg(n.var));
            case ExpoOp::Add: {
                ExpoVal acc = ctx.expo_const(0);
                for (auto& k : n.kids) {
                    ExpoVal v = expo(k);
                    for (std::size_t i = 0; i < m; ++i) acc.r[i] = modarith::addmod(acc.r[i], v.r[i], ctx.expo_modulus(i));
                }
                return acc;
            }
            case ExpoOp::Mul: {
                ExpoVal acc = ctx.expo_const(1);
                for (auto& k : n.kids) {
                    ExpoVal v = expo(k);
                    for (std::size_t i = 0; i < m; ++i) acc.r[i] = modarith::mulmod(acc.r[i], v.r[i], ctx.expo_modulus(i));
                }
                return acc;
            }
            case ExpoOp::Pow: {
                ExpoVal v = expo(n.kids[0]);
                for (std::size_t i = 0; i < m; ++i) {
                    const auto mod = ctx.expo_modulus(i);
                    v.r[i] = n.k == 0 ? 1 % mod : modarith::powmod(v.r[i], static_cast<std::uint64_t>(n.k), mod);
                }
                return v;
            }
        }
        return {};
    }

    Value base(const Expr& e) {
        const auto& n = e.node();
        switch (n.op) {
            case Op::Const: return n.value;
            case Op::Var: return arg(n.var);
            case Op::LetVar: return lookup(n.name);
            case Op::Add: {
                Value acc = 0;
                for (auto& k : n.kids) acc = ctx.add(acc, base(k));
                return acc;
            }
            case Op::Mul: {
                Value acc = ctx.from_int(1);
                for (auto& k : n.kids) {
                    acc = ctx.mul(acc, base(k));
                }
                return acc;
            }
            case Op::Pow: return ctx.pow_u(base(n.kids[0]), n.exponent);
            case Op::PowVar: {
                Value b = base(n.kids[0]);
                if (!ctx.is_unit(b)) fail(Errc::NonUnitBase, "variable exponent applied to a non-unit base");
                return ctx.pow_ported(b, expo(n.expo));
            }
            case Op::Let: {
                Value v = base(n.kids[0]);
                if (!ctx.is_unit(v)) fail(Errc::NonUnitBase, "letu binding '" + n.name + "' is not a unit");
                env.emplace_back(&n.name, v);
                Value r = base(n.kids[1]);
                env.pop_back();
                return r;
            }
        }
        return 0;
    }
};

void check_args(const Ctx& ctx, std::span<const Value> args) {
    for (auto v : args)
        if (!ctx.contains(v)) fail(Errc::ResidueOutOfRange, "argument " + std::to_string(v) + " outside the carrier");
}

}  // namespace

Value eval(const Expr& e, const Ctx& ctx, std::span<const Value> args) {
    check_args(ctx, args);
    Evaluator ev{ctx, args, {}};
    return ev.base(e);
}

Value eval(const Expr& e, const Ctx& ctx, std::span<const Value> args, const DomainSpec& domain) {
    if (!domain.contains(ctx, args)) fail(Errc::DomainViolation, "argument outside the declared domain");
    Evaluator ev{ctx, args, {}};
    return ev.base(e);
}

ExpoVal eval_expo(const Expo& x, const Ctx& ctx, std::span<const Value> args) {
    check_args(ctx, args);
    Evaluator ev{ctx, args, {}};
    return ev.expo(x);
}

// ---------------------------------------------------------------- printing

namespace {

void write_expo(const Expo& x, std::string& out) {
    const auto& n = x.node();
    switch (n.op) {
        case ExpoOp::Const: out += "(c " + std::to_string(n.k) + ")"; return;
        case ExpoOp::Log:
            out += "(log ";
            out += n.atom_is_let ? n.name : "v" + std::to_string(n.var);
            out += ")";
            return;
        case ExpoOp::Add:
        case ExpoOp::Mul:
            out += n.op == ExpoOp::Add ? "(+" : "(*";
            for (auto& k : n.kids) {
                out += ' ';
                write_expo(k, out);
            }
            out += ")";
            return;
        case ExpoOp::Pow:
            out += "(^ ";
            write_expo(n.kids[0], out);
            out += " " + std::to_string(n.k) + ")";
            return;
    }
}

void write_expr(const Expr& e, std::string& out) {
    const auto& n = e.node();
    switch (n.op) {
        case Op::Const: out += "(c " + std::to_string(n.value) + ")"; return;
        case Op::Var: out += "v" + std::to_string(n.var); return;
        case Op::LetVar: out += n.name; return;
        case Op::Add:
        case Op::Mul:
            out += n.op == Op::Add ? "(+" : "(*";
            for (auto& k : n.kids) {
                out += ' ';
                write_expr(k, out);
            }
            out += ")";
            return;
        case Op::Pow:
            out += "(^ ";
            write_expr(n.kids[0], out);
            out += " " + std::to_string(n.exponent) + ")";
            return;
        case Op::PowVar:
            out += "(^^ ";
            write_expr(n.kids[0], out);
            out += ' ';
            write_expo(n.expo, out);
            out += ")";
            return;
        case Op::Let:
            out += "(letu " + n.name + " ";
            write_expr(n.kids[0], out);
            out += ' ';
            write_expr(n.kids[1], out);
            out += ")";
            return;
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string s;
    write_expr(e, s);
    return s;
}

std::string to_string(const Expo& x) {
    std::string s;
    write_expo(x, s);
    return s;
}

Sexp to_sexp(const Expr& e) { return parse_sexp(to_string(e)); }

// ---------------------------------------------------------------- parsing

namespace {

bool is_var_name(const std::string& a, std::size_t& idx) {
    if (a.size() < 2 || a[0] != 'v') return false;
    std::size_t v = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(a[i]))) return false;
        v = v * 10 + static_cast<std::size_t>(a[i] - '0');
        if (v > (std::size_t{1} << 30)) return false;
    }
    idx = v;
    return true;
}

bool is_identifier(const std::string& a) {
    if (a.empty() || !(std::isalpha(static_cast<unsigned char>(a[0])) || a[0] == '_')) return false;
    for (char ch : a)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    static const std::set<std::string> reserved = {"c", "log", "letu"};
    return !reserved.count(a);
}

struct Parser {
    const Ctx& ctx;
    std::size_t arity;
    std::vector<std::string> scope;

    bool bound(const std::string& n) const { return std::find(scope.begin(), scope.end(), n) != scope.end(); }

    Expo expo(const Sexp& s) {
        if (s.is_atom) fail(Errc::Parse, "bare atom '" + s.atom + "' in exponent; use (c k) or (log v)");
        if (s.list.empty() || !s.list[0].is_atom) fail(Errc::Parse, "malformed exponent expression");
        const std::string& h = s.list[0].atom;
        if (h == "c") {
            if (s.list.size() != 2) fail(Errc::Parse, "(c k) in exponent takes one integer");
            return Expo::constant(s.list[1].as_int());
        }
        if (h == "log") {
            if (s.list.size() != 2 || !s.list[1].is_atom) fail(Errc::Parse, "(log v) takes one variable");
            std::size_t idx;
            const auto& a = s.list[1].atom;
            if (is_var_name(a, idx)) {
                if (idx >= arity) fail(Errc::Parse, "variable " + a + " exceeds arity " + std::to_string(arity));
                return Expo::log_var(idx);
            }
            if (!bound(a)) fail(Errc::Parse, "log of unbound name '" + a + "'");
            return Expo::log_let(a);
        }
        if (h == "+" || h == "*") {
            std::vector<Expo> kids;
            for (std::size_t i = 1; i < s.list.size(); ++i) kids.push_back(expo(s.list[i]));
            if (kids.empty()) return Expo::constant(h == "+" ? 0 : 1);
            return h == "+" ? Expo::add(std::move(kids)) : Expo::mul(std::move(kids));
        }
        if (h == "^") {
            if (s.list.size() != 3) fail(Errc::Parse, "(^ x K) takes two arguments");
            return Expo::pow(expo(s.list[1]), s.list[2].as_uint());
        }
        if (h == "^^") fail(Errc::Parse, "nested variable exponent is not allowed");
        fail(Errc::Parse, "unknown exponent operator '" + h + "'");
    }

    Expr base(const Sexp& s) {
        if (s.is_atom) {
            std::size_t idx;
            if (is_var_name(s.atom, idx)) {
                if (idx >= arity) fail(Errc::Parse, "variable " + s.atom + " exceeds arity " + std::to_string(arity));
                return Expr::var(idx);
            }
            if (bound(s.atom)) return Expr::let_var(s.atom);
            fail(Errc::Parse, "unknown atom '" + s.atom + "'");
        }
        if (s.list.empty() || !s.list[0].is_atom) fail(Errc::Parse, "malformed expression");
        const std::string& h = s.list[0].atom;
        if (h == "c") return constant(s);
        if (h == "+" || h == "*") {
            std::vector<Expr> kids;
            for (std::size_t i = 1; i < s.list.size(); ++i) kids.push_back(base(s.list[i]));
            if (kids.empty()) return Expr::constant(h == "+" ? 0 : ctx.from_int(1));
            return h == "+" ? Expr::add(std::move(kids)) : Expr::mul(std::move(kids));
        }
        if (h == "^") {
            if (s.list.size() != 3) fail(Errc::Parse, "(^ e K) takes two arguments");
            return Expr::pow(base(s.list[1]), s.list[2].as_uint());
        }
        if (h == "^^") {
            if (s.list.size() != 3) fail(Errc::Parse, "(^^ e X) takes two arguments");
            return Expr::pow_var(base(s.list[1]), expo(s.list[2]));
        }
        if (h == "letu") {
            if (s.list.size() != 4 || !s.list[1].is_atom) fail(Errc::Parse, "(letu name bound body) malformed");
            const std::string& name = s.list[1].atom;
            std::size_t idx;
            if (!is_identifier(name) || is_var_name(name, idx)) fail(Errc::Parse, "invalid letu name '" + name + "'");
            Expr b = base(s.list[2]);
            scope.push_back(name);
            Expr body = base(s.list[3]);
            scope.pop_back();
            return Expr::let_unit(name, std::move(b), std::move(body));
        }
        if (h == "log") fail(Errc::Parse, "(log v) may only appear inside an exponent");
        fail(Errc::Parse, "unknown operator '" + h + "'");
    }

    Expr constant(const Sexp& s) {
        if (s.list.size() == 2) {
            std::int64_t k = s.list[1].as_int();
            if (k >= 0) {
                if (static_cast<std::uint64_t>(k) >= ctx.size())
                    fail(Errc::Parse, "constant " + std::to_string(k) + " outside the carrier");
                return Expr::constant(static_cast<Value>(k));
            }
            std::uint64_t mag = static_cast<std::uint64_t>(-k);
            if (mag >= ctx.size()) fail(Errc::Parse, "constant " + std::to_string(k) + " outside the carrier");
            return Expr::constant(ctx.neg(mag));
        }
        if (!ctx.is_field() || s.list.size() != ctx.field().degree() + 1)
            fail(Errc::Parse, "constant must be one integer or a full coefficient vector");
        std::vector<std::uint64_t> c;
        for (std::size_t i = 1; i < s.list.size(); ++i) c.push_back(s.list[i].as_uint());
        return Expr::constant(ctx.field().pack(c));
    }
};

}  // namespace

Expr expr_from_sexp(const Sexp& s, const Ctx& ctx, std::size_t arity) {
    Parser p{ctx, arity, {}};
    return p.base(s);
}

Expr parse_expr(std::string_view text, const Ctx& ctx, std::size_t arity) {
    return expr_from_sexp(parse_sexp(text), ctx, arity);
}

// ---------------------------------------------------------------- structure

namespace {

void collect_log_vars(const Expo& x, std::set<std::size_t>& out) {
    const auto& n = x.node();
    if (n.op == ExpoOp::Log && !n.atom_is_let) out.insert(n.var);
    for (auto& k : n.kids) collect_log_vars(k, out);
}

void collect_log_vars(const Expr& e, std::set<std::size_t>& out, std::unordered_set<const void*>& seen) {
    if (!seen.insert(e.id()).second) return;
    const auto& n = e.node();
    if (n.op == Op::PowVar) collect_log_vars(n.expo, out);
    for (auto& k : n.kids) collect_log_vars(k, out, seen);
}

long let_suffix(const std::string& name) {
    if (name.size() < 2 || name[0] != 'u') return -1;
    long v = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
        v = v * 10 + (name[i] - '0');
        if (v > 1000000000L) return -1;
    }
    return v;
}

void max_let_suffix(const Expr& e, long& best, std::unordered_set<const void*>& seen) {
    if (!seen.insert(e.id()).second) return;
    const auto& n = e.node();
    if (n.op == Op::Let) best = std::max(best, let_suffix(n.name));
    for (auto& k : n.kids) max_let_suffix(k, best, seen);
}

struct Substituter {
    std::span<const Expr> repl;
    std::map<std::size_t, std::string> let_names;
    std::unordered_map<const void*, Expr> memo;

    Expo expo(const Expo& x) {
        const auto& n = x.node();
        switch (n.op) {
            case ExpoOp::Const: return x;
            case ExpoOp::Log:
                if (n.atom_is_let) return x;
                return Expo::log_let(let_names.at(n.var));
            case ExpoOp::Add:
            case ExpoOp::Mul: {
                std::vector<Expo> kids;
                for (auto& k : n.kids) kids.push_back(expo(k));
                return n.op == ExpoOp::Add ? Expo::add(std::move(kids)) : Expo::mul(std::move(kids));
            }
            case ExpoOp::Pow: return Expo::pow(expo(n.kids[0]), static_cast<std::uint64_t>(n.k));
        }
        return x;
    }

    Expr base(const Expr& e) {
        auto it = memo.find(e.id());
        if (it != memo.end()) return it->second;
        const auto& n = e.node();
        Expr r;
        switch (n.op) {
            case Op::Const:
            case Op::LetVar: r = e; break;
            case Op::Var: {
                if (n.var >= repl.size()) fail(Errc::InvalidArgument, "substitution missing for v" + std::to_string(n.var));
                auto ln = let_names.find(n.var);
                r = ln != let_names.end() ? Expr::let_var(ln->second) : repl[n.var];
                break;
            }
            case Op::Add:
            case Op::Mul: {
                std::vector<Expr> kids;
                for (auto& k : n.kids) kids.push_back(base(k));
                r = n.op == Op::Add ? Expr::add(std::move(kids)) : Expr::mul(std::move(kids));
                break;
            }
            case Op::Pow: r = Expr::pow(base(n.kids[0]), n.exponent); break;
            case Op::PowVar: r = Expr::pow_var(base(n.kids[0]), expo(n.expo)); break;
            case Op::Let: r = Expr::let_unit(n.name, base(n.kids[0]), base(n.kids[1])); break;
        }
        memo.emplace(e.id(), r);
        return r;
    }
};

}  // namespace

Expr substitute(const Expr& e, std::span<const Expr> repl) {
    std::set<std::size_t> logged;
    {
        std::unordered_set<const void*> seen;
        collect_log_vars(e, logged, seen);
    }
    long top = -1;
    {
        std::unordered_set<const void*> seen;
        max_let_suffix(e, top, seen);
        for (auto& r : repl) max_let_suffix(r, top, seen);
    }
    Substituter s{repl, {}, {}};
    for (auto v : logged) {
        if (v >= repl.size()) fail(Errc::InvalidArgument, "substitution missing for v" + std::to_string(v));
        s.let_names[v] = "u" + std::to_string(++top);
    }
    Expr body = s.base(e);
    for (auto it = s.let_names.rbegin(); it != s.let_names.rend(); ++it)
        body = Expr::let_unit(it->second, repl[it->first], body);
    return body;
}

namespace {

struct Shifter {
    std::function<std::size_t(std::size_t)> map;
    std::unordered_map<const void*, Expr> memo;

    Expo expo(const Expo& x) {
        const auto& n = x.node();
        switch (n.op) {
            case ExpoOp::Const: return x;
            case ExpoOp::Log: return n.atom_is_let ? x : Expo::log_var(map(n.var));
            case ExpoOp::Add:
            case ExpoOp::Mul: {
                std::vector<Expo> kids;
                for (auto& k : n.kids) kids.push_back(expo(k));
                return n.op == ExpoOp::Add ? Expo::add(std::move(kids)) : Expo::mul(std::move(kids));
            }
            case ExpoOp::Pow: return Expo::pow(expo(n.kids[0]), static_cast<std::uint64_t>(n.k));
        }
        return x;
    }

    Expr base(const Expr& e) {
        auto it = memo.find(e.id());
        if (it != memo.end()) return it->second;
        const auto& n = e.node();
        Expr r;
        switch (n.op) {
            case Op::Const:
            case Op::LetVar: r = e; break;
            case Op::Var: r = Expr::var(map(n.var)); break;
            case Op::Add:
            case Op::Mul: {
                std::vector<Expr> kids;
                for (auto& k : n.kids) kids.push_back(base(k));
                r = n.op == Op::Add ? Expr::add(std::move(kids)) : Expr::mul(std::move(kids));
                break;
            }
            case Op::Pow: r = Expr::pow(base(n.kids[0]), n.exponent); break;
            case Op::PowVar: r = Expr::pow_var(base(n.kids[0]), expo(n.expo)); break;
            case Op::Let: r = Expr::let_unit(n.name, base(n.kids[0]), base(n.kids[1])); break;
        }
        memo.emplace(e.id(), r);
        return r;
    }
};

}  // namespace

Expr shift_vars(const Expr& e, std::size_t delta) {
    if (delta == 0) return e;
    Shifter s{[delta](std::size_t i) { return i + delta; }, {}};
    return s.base(e);
}

Expr rename_vars(const Expr& e, std::span<const std::size_t> map) {
    Shifter s{[map](std::size_t i) {
                  if (i >= map.size()) fail(Errc::InvalidArgument, "rename map misses v" + std::to_string(i));
                  return map[i];
              },
              {}};
    return s.base(e);
}

Expo expo_from_sexp(const Sexp& s, const Ctx& ctx, std::size_t arity) {
    Parser p{ctx, arity, {}};
    return p.expo(s);
}

bool uses_exponent_level(const Expr& e) {
    const auto& n = e.node();
    if (n.op == Op::PowVar || n.op == Op::Let) return true;
    for (auto& k : n.kids)
        if (uses_exponent_level(k)) return true;
    return false;
}

std::size_t node_count(const Expr& e) {
    std::size_t c = 1;
    for (auto& k : e.node().kids) c += node_count(k);
    return c;
}

namespace {

void var_bound_expo(const Expo& x, std::size_t& b) {
    const auto& n = x.node();
    if (n.op == ExpoOp::Log && !n.atom_is_let) b = std::max(b, n.var + 1);
    for (auto& k : n.kids) var_bound_expo(k, b);
}

void var_bound_rec(const Expr& e, std::size_t& b, std::unordered_set<const void*>& seen) {
    if (!seen.insert(e.id()).second) return;
    const auto& n = e.node();
    if (n.op == Op::Var) b = std::max(b, n.var + 1);
    if (n.op == Op::PowVar) var_bound_expo(n.expo, b);
    for (auto& k : n.kids) var_bound_rec(k, b, seen);
}

}  // namespace

std::size_t var_bound(const Expo& x) {
    std::size_t b = 0;
    var_bound_expo(x, b);
    return b;
}

std::size_t var_bound(const Expr& e) {
    std::size_t b = 0;
    std::unordered_set<const void*> seen;
    var_bound_rec(e, b, seen);
    return b;
}

// ---------------------------------------------------------------- certificates

std::uint64_t certify_expr(const Expr& e, const Ctx& ctx, const DomainSpec& domain, std::uint64_t cap) {
    std::uint64_t n = 0;
    for_each_point(
        ctx, domain,
        [&](std::span<const Value> x) {
            try {
                (void)eval(e, ctx, x);
            } catch (const Error& err) {
                if (err.code() != Errc::NonUnitBase && err.code() != Errc::LogOfZero) throw;
                throw Error(Errc::Counterexample, std::string("non-unit base at a domain point: ") + err.what(),
                            {x.begin(), x.end()});
            }
            ++n;
            return true;
        },
        cap);
    return n;
}

UnitCert certify_unit_valued(const Expr& e, const Ctx& ctx, const DomainSpec& domain, std::uint64_t cap) {
    UnitCert cert{e, domain, 0};
    for_each_point(
        ctx, domain,
        [&](std::span<const Value> x) {
            Value v;
            try {
                v = eval(e, ctx, x);
            } catch (const Error& err) {
                if (err.code() != Errc::NonUnitBase && err.code() != Errc::LogOfZero) throw;
                throw Error(Errc::Counterexample, std::string("expression undefined at a domain point: ") + err.what(),
                            {x.begin(), x.end()});
            }
            if (!ctx.is_unit(v)) throw Error(Errc::Counterexample, "expression is not a unit at a domain point", {x.begin(), x.end()});
            ++cert.points_checked;
            return true;
        },
        cap);
    return cert;
}

bool UnitCert::recheck(const Ctx& ctx) const {
    try {
        auto again = certify_unit_valued(expr, ctx, domain);
        return again.points_checked == points_checked;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace mvmap
