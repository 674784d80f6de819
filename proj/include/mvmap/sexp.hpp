#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mvmap {

// Minimal S-expression tree: either an atom or a parenthesized list.
struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> list;

    static Sexp make_atom(std::string a) {
        Sexp s;
        s.is_atom = true;
        s.atom = std::move(a);
        return s;
    }
    static Sexp make_list(std::vector<Sexp> items = {}) {
        Sexp s;
        s.list = std::move(items);
        return s;
    }

    bool is_list() const { return !is_atom; }
    bool head_is(std::string_view h) const { return !is_atom && !list.empty() && list[0].is_atom && list[0].atom == h; }
    std::int64_t as_int() const;
    std::uint64_t as_uint() const;
};

std::vector<Sexp> parse_sexps(std::string_view text);
Sexp parse_sexp(std::string_view text);  // exactly one top-level form
std::string to_string(const Sexp& s);

}  // namespace mvmap
