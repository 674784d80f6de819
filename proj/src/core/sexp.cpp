#include "mvmap/sexp.hpp"

#include <cctype>
#include <charconv>

#include "mvmap/error.hpp"

namespace mvmap {

namespace {

class Reader {
public:
    explicit Reader(std::string_view t) : t_(t) {}

    bool at_end() {
        skip();
        return pos_ >= t_.size();
    }

    Sexp read() {
        skip();
        if (pos_ >= t_.size()) fail(Errc::Parse, "unexpected end of input");
        char ch = t_[pos_];
        if (ch == ')') fail(Errc::Parse, "unexpected ')' at offset " + std::to_string(pos_));
        if (ch == '(') {
            ++pos_;
            if (++depth_ > 4096) fail(Errc::Parse, "nesting too deep");
            Sexp s = Sexp::make_list();
            for (;;) {
                skip();
                if (pos_ >= t_.size()) fail(Errc::Parse, "missing ')'");
                if (t_[pos_] == ')') {
                    ++pos_;
                    --depth_;
                    return s;
                }
                s.list.push_back(read());
            }
        }
        std::size_t start = pos_;
        while (pos_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[pos_])) && t_[pos_] != '(' &&
               t_[pos_] != ')')
            ++pos_;
        return Sexp::make_atom(std::string(t_.substr(start, pos_ - start)));
    }

private:
    void skip() {
        while (pos_ < t_.size()) {
            if (std::isspace(static_cast<unsigned char>(t_[pos_]))) {
                ++pos_;
            } else if (t_[pos_] == ';') {
                while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view t_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

void write(const Sexp& s, std::string& out) {
    if (s.is_atom) {
        out += s.atom;
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < s.list.size(); ++i) {
        if (i) out += ' ';
        write(s.list[i], out);
    }
    out += ')';
}

}  // namespace

std::int64_t Sexp::as_int() const {
    if (!is_atom) fail(Errc::Parse, "expected an integer, found a list");
    std::int64_t v = 0;
    const char* b = atom.data();
    const char* e = b + atom.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) fail(Errc::Parse, "expected an integer, found '" + atom + "'");
    return v;
}

std::uint64_t Sexp::as_uint() const {
    if (!is_atom) fail(Errc::Parse, "expected an integer, found a list");
    std::uint64_t v = 0;
    const char* b = atom.data();
    const char* e = b + atom.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) fail(Errc::Parse, "expected a non-negative integer, found '" + atom + "'");
    return v;
}

std::vector<Sexp> parse_sexps(std::string_view text) {
    Reader r(text);
    std::vector<Sexp> out;
    while (!r.at_end()) out.push_back(r.read());
    return out;
}

Sexp parse_sexp(std::string_view text) {
    auto all = parse_sexps(text);
    if (all.size() != 1) fail(Errc::Parse, "expected exactly one expression, found " + std::to_string(all.size()));
    return std::move(all[0]);
}

std::string to_string(const Sexp& s) {
    std::string out;
    write(s, out);
    return out;
}

}  // namespace mvmap
