#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvmap/ctx.hpp"
#include "mvmap/domain.hpp"
#include "mvmap/sexp.hpp"

namespace mvmap {

enum class ExpoOp : std::uint8_t { Const, Log, Add, Mul, Pow };

// Exponent-level expression over atoms (log v) where v is a base variable or a
// unit-bound name. Evaluated componentwise in the exponent ring(s) of the context.
// No variable exponents occur at this level.
class Expo {
public:
    struct Node {
        ExpoOp op = ExpoOp::Const;
        std::int64_t k = 0;  // Const value, or Pow exponent
        bool atom_is_let = false;
        std::size_t var = 0;
        std::string name;
        std::vector<Expo> kids;
    };

    Expo();
    static Expo constant(std::int64_t k);
    static Expo log_var(std::size_t i);
    static Expo log_let(std::string name);
    static Expo add(std::vector<Expo> kids);
    static Expo mul(std::vector<Expo> kids);
    static Expo pow(Expo base, std::uint64_t k);

    ExpoOp op() const { return n_->op; }
    const Node& node() const { return *n_; }
    bool is_constant() const;  // no log atoms anywhere

private:
    explicit Expo(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

enum class Op : std::uint8_t { Const, Var, LetVar, Add, Mul, Pow, PowVar, Let };

// Base-level expression DAG. Nodes are immutable and shared.
//   Pow     base^K for a constant K >= 0, with 0^0 = 1
//   PowVar  base^X for an exponent-level X; base must be a unit wherever evaluated
//   Let     (letu name bound body): bound must be a unit; name may appear in
//           body both as a value and inside (log name)
class Expr {
public:
    struct Node {
        Op op = Op::Const;
        Value value = 0;
        std::size_t var = 0;
        std::uint64_t exponent = 0;
        std::string name;
        std::vector<Expr> kids;
        Expo expo;
    };

    Expr();
    static Expr constant(Value v);
    static Expr var(std::size_t i);
    static Expr let_var(std::string name);
    static Expr add(std::vector<Expr> kids);
    static Expr mul(std::vector<Expr> kids);
    static Expr pow(Expr base, std::uint64_t k);
    static Expr pow_var(Expr base, Expo exponent);
    static Expr let_unit(std::string name, Expr bound, Expr body);

    Op op() const { return n_->op; }
    const Node& node() const { return *n_; }
    const void* id() const { return n_.get(); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

Value eval(const Expr& e, const Ctx& ctx, std::span<const Value> args);
// Checks args against the domain first; DomainViolation otherwise.
Value eval(const Expr& e, const Ctx& ctx, std::span<const Value> args, const DomainSpec& domain);
ExpoVal eval_expo(const Expo& x, const Ctx& ctx, std::span<const Value> args);

std::string to_string(const Expr& e);
std::string to_string(const Expo& x);
Sexp to_sexp(const Expr& e);

// Grammar:
//   base  := vK | name | (c int) | (c c0 .. c{n-1}) | (+ base ...) | (* base ...)
//          | (^ base K) | (^^ base expo) | (letu name base base)
//   expo  := (c int) | (log vK) | (log name) | (+ expo ...) | (* expo ...) | (^ expo K)
// Variables must satisfy K < arity; names must be bound by an enclosing letu.
Expr parse_expr(std::string_view text, const Ctx& ctx, std::size_t arity);
Expr expr_from_sexp(const Sexp& s, const Ctx& ctx, std::size_t arity);

// Replaces v_i by repl[i]. Variables that occur inside log atoms are bound once
// through fresh letu names so the result stays within the grammar.
Expr substitute(const Expr& e, std::span<const Expr> repl);

// Shifts every variable index by delta (v_i -> v_{i+delta}).
Expr shift_vars(const Expr& e, std::size_t delta);
// v_i -> v_{map[i]}, including inside log atoms.
Expr rename_vars(const Expr& e, std::span<const std::size_t> map);
Expo expo_from_sexp(const Sexp& s, const Ctx& ctx, std::size_t arity);

bool uses_exponent_level(const Expr& e);
std::size_t node_count(const Expr& e);
// Largest variable index + 1 referenced by e.
std::size_t var_bound(const Expr& e);
std::size_t var_bound(const Expo& x);

// Exhaustive check that every variable-exponent base and every letu binding is a
// unit on the domain. Throws Counterexample carrying the offending point.
std::uint64_t certify_expr(const Expr& e, const Ctx& ctx, const DomainSpec& domain,
                           std::uint64_t cap = kEnumerationCap);

struct UnitCert {
    Expr expr;
    DomainSpec domain;
    std::uint64_t points_checked = 0;
    // Re-runs the exhaustive check.
    bool recheck(const Ctx& ctx) const;
};

// Certifies that e is a unit at every point of the domain.
UnitCert certify_unit_valued(const Expr& e, const Ctx& ctx, const DomainSpec& domain,
                             std::uint64_t cap = kEnumerationCap);

}  // namespace mvmap
