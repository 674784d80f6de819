#include "mvmap/keyfile.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace mvmap {

const char* key_kind_name(KeyKind k) {
    switch (k) {
        case KeyKind::HT: return "HT";
        case KeyKind::BT: return "BT";
        case KeyKind::LT: return "LT";
        case KeyKind::ST: return "ST";
        case KeyKind::SVT: return "SVT";
        case KeyKind::SAT: return "SAT";
    }
    return "?";
}

KeyKind key_kind_from_name(std::string_view s) {
    for (auto k : {KeyKind::HT, KeyKind::BT, KeyKind::LT, KeyKind::ST, KeyKind::SVT, KeyKind::SAT})
        if (s == key_kind_name(k)) return k;
    fail(Errc::Parse, "unknown key kind '" + std::string(s) + "'");
}

const std::vector<std::string>& allowed_sections(KeyKind k) {
    static const std::map<KeyKind, std::vector<std::string>> table = {
        {KeyKind::HT, {"f", "Q", "eta", "g"}}, {KeyKind::BT, {"zeta", "Tinv", "tri"}},
        {KeyKind::LT, {"P"}},                  {KeyKind::ST, {"zeta", "tri"}},
        {KeyKind::SVT, {"P"}},                 {KeyKind::SAT, {"S"}},
    };
    return table.at(k);
}

bool is_public(KeyKind k) { return k == KeyKind::LT || k == KeyKind::SVT; }

namespace {

KeyFile base(const Ctx& ctx, std::uint64_t seed, KeyKind kind, const SchemeParams& prm) {
    KeyFile k;
    k.kind = kind;
    k.field = ctx.field_ptr();
    if (!k.field) fail(Errc::InvalidArgument, "key files need a field context");
    k.prm = prm;
    k.seed = seed;
    return k;
}

std::string row_sexp(const char* head, const std::vector<Value>& v) {
    std::string s = std::string("(") + head;
    for (auto x : v) s += " " + std::to_string(x);
    return s + ")";
}

struct Section {
    std::string name;
    std::size_t index = 0;  // 0 when unindexed
    std::string body;
};

bool indexed(const std::string& name) { return name == "f" || name == "Q" || name == "g" || name == "P" || name == "S"; }

std::vector<std::uint64_t> read_uints(std::istringstream& in, std::size_t n, const char* what) {
    std::vector<std::uint64_t> v(n);
    for (auto& x : v)
        if (!(in >> x)) fail(Errc::Parse, std::string("truncated ") + what + " line");
    std::string extra;
    if (in >> extra) fail(Errc::Parse, std::string("trailing data on ") + what + " line");
    return v;
}

}  // namespace

KeyFile make_key(const Ctx& ctx, std::uint64_t seed, HashTable t) {
    KeyFile k = base(ctx, seed, KeyKind::HT, t.prm);
    k.ht = std::move(t);
    return k;
}

KeyFile make_key(const Ctx& ctx, std::uint64_t seed, BackTable t) {
    KeyFile k = base(ctx, seed, KeyKind::BT, t.prm);
    k.bt = std::move(t);
    return k;
}

KeyFile make_key(const Ctx& ctx, std::uint64_t seed, SignTable t) {
    KeyFile k = base(ctx, seed, KeyKind::ST, t.prm);
    k.st = std::move(t);
    return k;
}

KeyFile make_key(const Ctx& ctx, std::uint64_t seed, KeyKind kind, PublicTable t) {
    if (kind != KeyKind::LT && kind != KeyKind::SVT && kind != KeyKind::SAT)
        fail(Errc::InvalidArgument, "polynomial tables are LT, SVT or SAT");
    KeyFile k = base(ctx, seed, kind, t.prm);
    if (!t.canonical)
        k.warnings.push_back("polynomials kept as expression DAGs; their construction structure is visible");
    k.pub = std::move(t);
    return k;
}

std::string serialize_key(const KeyFile& k) {
    const SchemeParams& p = k.prm;
    std::ostringstream o;
    o << "mvmap-key v1 " << key_kind_name(k.kind) << "\n";
    o << "params " << p.mu << " " << p.kappa << " " << p.L << " " << p.lambda << " " << p.nu() << " "
      << (p.sign ? 1 : 0) << "\n";
    o << "field " << k.field->characteristic() << " " << k.field->degree();
    for (auto c : k.field->modulus()) o << " " << c;
    o << "\n";
    o << "group " << group_name(p.group) << "\n";
    o << "primitive " << k.field->primitive() << "\n";
    o << "rng " << Rng::kName << " " << k.seed << "\n";
    if (k.pub) o << "form " << (k.pub->canonical ? "poly" : "expr") << "\n";
    for (auto& w : k.warnings) o << "warning " << w << "\n";

    std::vector<Section> out;
    auto add_exprs = [&](const char* name, const std::vector<Expr>& es) {
        for (std::size_t i = 0; i < es.size(); ++i) out.push_back({name, i + 1, to_string(es[i])});
    };
    switch (k.kind) {
        case KeyKind::HT:
            add_exprs("f", k.ht->f);
            add_exprs("Q", k.ht->Q);
            if (k.ht->eta) out.push_back({"eta", 0, to_string(k.ht->eta->to_sexp())});
            add_exprs("g", k.ht->g);
            break;
        case KeyKind::BT: {
            if (k.bt->zeta) out.push_back({"zeta", 0, to_string(k.bt->zeta->to_sexp())});
            if (!k.bt->Tinv.empty()) {
                std::string s = "(affine";
                for (auto& row : k.bt->Tinv) s += " " + row_sexp("row", row);
                s += " " + row_sexp("offset", k.bt->offset) + ")";
                out.push_back({"Tinv", 0, s});
            }
            if (k.bt->tri) out.push_back({"tri", 0, to_string(k.bt->tri->to_sexp())});
            break;
        }
        case KeyKind::ST:
            if (k.st->zeta) out.push_back({"zeta", 0, to_string(k.st->zeta->to_sexp())});
            if (k.st->tri) out.push_back({"tri", 0, to_string(k.st->tri->to_sexp())});
            break;
        case KeyKind::LT:
        case KeyKind::SVT: add_exprs("P", k.pub->polys); break;
        case KeyKind::SAT: add_exprs("S", k.pub->polys); break;
    }
    const auto& allowed = allowed_sections(k.kind);
    for (auto& s : out) {
        // Schema guard: a table may only emit the sections of its kind.
        if (std::find(allowed.begin(), allowed.end(), s.name) == allowed.end())
            fail(Errc::InvalidArgument, "section " + s.name + " not allowed in " + key_kind_name(k.kind));
        o << "[" << s.name;
        if (s.index) o << " " << s.index;
        o << "] " << s.body << "\n";
    }
    return o.str();
}

namespace {

KeyFile parse_key_impl(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) fail(Errc::Parse, std::string("missing ") + what + " line");
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };
    KeyFile k;
    next_line("header");
    {
        std::istringstream h(line);
        std::string magic, ver, kind, extra;
        h >> magic >> ver >> kind;
        if (magic != "mvmap-key" || ver != "v1" || (h >> extra)) fail(Errc::Parse, "bad header line");
        k.kind = key_kind_from_name(kind);
    }
    next_line("params");
    {
        std::istringstream h(line);
        std::string tag;
        h >> tag;
        if (tag != "params") fail(Errc::Parse, "expected params line");
        auto v = read_uints(h, 6, "params");
        k.prm.mu = v[0];
        k.prm.kappa = v[1];
        k.prm.L = v[2];
        k.prm.lambda = v[3];
        if (v[4] != k.prm.nu()) fail(Errc::Parse, "nu != mu + lambda");
        if (v[5] > 1) fail(Errc::Parse, "sign flag must be 0 or 1");
        k.prm.sign = v[5] == 1;
    }
    next_line("field");
    {
        std::istringstream h(line);
        std::string tag;
        std::uint64_t p = 0, n = 0;
        h >> tag >> p >> n;
        if (tag != "field" || !h || n == 0 || n > 64) fail(Errc::Parse, "bad field line");
        auto mod = read_uints(h, n + 1, "field");
        k.field = std::make_shared<const Field>(p, static_cast<unsigned>(n), mod);
    }
    next_line("group");
    {
        std::istringstream h(line);
        std::string tag, g, extra;
        h >> tag >> g;
        if (tag != "group" || (h >> extra)) fail(Errc::Parse, "bad group line");
        k.prm.group = group_from_name(g);
    }
    const Ctx ctx = k.ctx();
    k.prm.validate(ctx);
    next_line("primitive");
    {
        std::istringstream h(line);
        std::string tag;
        h >> tag;
        if (tag != "primitive") fail(Errc::Parse, "bad primitive line");
        if (read_uints(h, 1, "primitive")[0] != k.field->primitive())
            fail(Errc::Parse, "primitive element does not match the field");
    }
    next_line("rng");
    {
        std::istringstream h(line);
        std::string tag, name;
        h >> tag >> name;
        if (tag != "rng" || name != Rng::kName) fail(Errc::Parse, "bad rng line");
        k.seed = read_uints(h, 1, "rng")[0];
    }
    bool canonical = true, saw_form = false;
    std::vector<Section> sections;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("form ", 0) == 0 && sections.empty() && !saw_form) {
            const std::string f = line.substr(5);
            if (f != "poly" && f != "expr") fail(Errc::Parse, "bad form line");
            canonical = f == "poly";
            saw_form = true;
            continue;
        }
        if (line.rfind("warning ", 0) == 0 && sections.empty()) {
            k.warnings.push_back(line.substr(8));
            continue;
        }
        if (line[0] != '[') fail(Errc::Parse, "unexpected line: " + line.substr(0, 40));
        const auto close = line.find(']');
        if (close == std::string::npos) fail(Errc::Parse, "unterminated section tag");
        std::istringstream tag(line.substr(1, close - 1));
        Section s;
        tag >> s.name;
        if (indexed(s.name)) {
            if (!(tag >> s.index) || s.index == 0) fail(Errc::Parse, "section " + s.name + " needs a positive index");
        }
        std::string extra;
        if (tag >> extra) fail(Errc::Parse, "bad section tag");
        s.body = line.substr(close + 1);
        const auto& allowed = allowed_sections(k.kind);
        if (std::find(allowed.begin(), allowed.end(), s.name) == allowed.end())
            fail(Errc::Parse, "section " + s.name + " not allowed in " + key_kind_name(k.kind));
        sections.push_back(std::move(s));
    }
    const bool polynomial_kind = is_public(k.kind) || k.kind == KeyKind::SAT;
    if (saw_form != polynomial_kind) fail(Errc::Parse, "form line belongs exactly to polynomial tables");

    // Indexed sections must appear as name 1, name 2, ... in file order.
    std::map<std::string, std::vector<const Section*>> by_name;
    for (auto& s : sections) {
        auto& v = by_name[s.name];
        if (indexed(s.name) ? s.index != v.size() + 1 : !v.empty())
            fail(Errc::Parse, "section " + s.name + " out of order or repeated");
        v.push_back(&s);
    }
    auto exprs = [&](const std::string& name, std::size_t count, std::size_t arity) {
        auto& v = by_name[name];
        if (v.size() != count) fail(Errc::Parse, "expected " + std::to_string(count) + " [" + name + "] sections");
        std::vector<Expr> out;
        for (auto* s : v) out.push_back(parse_expr(s->body, ctx, arity));
        return out;
    };
    auto single = [&](const std::string& name, bool required) -> const Section* {
        auto& v = by_name[name];
        if (v.empty()) {
            if (required) fail(Errc::Parse, "missing [" + name + "] section");
            return nullptr;
        }
        return v[0];
    };
    const SchemeParams& p = k.prm;
    const bool direct = p.direct();
    switch (k.kind) {
        case KeyKind::HT: {
            HashTable t;
            t.prm = p;
            if (!direct) {
                t.f = exprs("f", p.L, p.inputs());
                t.Q = exprs("Q", p.lambda, p.inputs());
                t.eta = ParametricMap::from_sexp(ctx, parse_sexp(single("eta", true)->body));
                if (t.eta->params() != p.lambda - p.L || t.eta->arity() != p.L || t.eta->group() != p.group)
                    fail(Errc::Parse, "eta has the wrong shape");
                t.g = exprs("g", p.sign ? p.L : 0, p.lambda);
            } else if (!sections.empty()) {
                fail(Errc::Parse, "direct-mode hash tables carry no sections");
            }
            k.ht = std::move(t);
            break;
        }
        case KeyKind::BT:
        case KeyKind::ST: {
            std::optional<ParametricMap> zeta;
            std::optional<TriangularScheme> tri;
            if (direct) {
                tri = TriangularScheme::from_sexp(ctx, parse_sexp(single("tri", true)->body));
                if (tri->arity() != p.mu || tri->group() != p.group) fail(Errc::Parse, "tri has the wrong shape");
                if (single("zeta", false) || single("Tinv", false)) fail(Errc::Parse, "direct mode uses [tri] only");
            } else {
                zeta = ParametricMap::from_sexp(ctx, parse_sexp(single("zeta", true)->body));
                if (zeta->params() != p.L || zeta->arity() != p.mu || zeta->group() != p.group)
                    fail(Errc::Parse, "zeta has the wrong shape");
                if (single("tri", false)) fail(Errc::Parse, "[tri] belongs to direct mode");
            }
            if (k.kind == KeyKind::ST) {
                if (p.sign != true) fail(Errc::Parse, "ST needs sign mode");
                k.st = SignTable{p, std::move(zeta), std::move(tri)};
                break;
            }
            BackTable t;
            t.prm = p;
            t.zeta = std::move(zeta);
            t.tri = std::move(tri);
            if (!direct) {
                const Sexp a = parse_sexp(single("Tinv", true)->body);
                const std::size_t nu = p.nu();
                if (!a.head_is("affine") || a.list.size() != nu + 2) fail(Errc::Parse, "bad [Tinv] section");
                auto row = [&](const Sexp& r, const char* head) {
                    if (!r.head_is(head) || r.list.size() != nu + 1) fail(Errc::Parse, "bad [Tinv] row");
                    std::vector<Value> v;
                    for (std::size_t j = 1; j <= nu; ++j) {
                        const auto x = r.list[j].as_uint();
                        if (!ctx.contains(x)) fail(Errc::Parse, "[Tinv] entry outside the field");
                        v.push_back(x);
                    }
                    return v;
                };
                for (std::size_t i = 0; i < nu; ++i) t.Tinv.push_back(row(a.list[i + 1], "row"));
                t.offset = row(a.list[nu + 1], "offset");
                if (!inverse(ctx.field(), t.Tinv)) fail(Errc::Parse, "[Tinv] is singular");
            }
            k.bt = std::move(t);
            break;
        }
        case KeyKind::LT:
        case KeyKind::SVT:
        case KeyKind::SAT: {
            PublicTable t;
            t.prm = p;
            t.canonical = canonical;
            if (k.kind == KeyKind::LT) {
                t.arity = direct ? p.mu : p.inputs();
                t.polys = exprs("P", p.nu(), t.arity);
            } else if (k.kind == KeyKind::SVT) {
                t.arity = p.nu();
                t.polys = exprs("P", p.mu, t.arity);
            } else {
                t.arity = p.inputs();
                t.polys = exprs("S", p.lambda, t.arity);
            }
            k.pub = std::move(t);
            break;
        }
    }
    return k;
}

}  // namespace

KeyFile parse_key(std::string_view text) {
    try {
        return parse_key_impl(text);
    } catch (const Error& e) {
        if (e.code() == Errc::Parse) throw;
        throw Error(Errc::Parse, std::string("invalid key file: ") + errc_name(e.code()) + ": " + e.what());
    }
}

KeyFile load_key(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(Errc::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_key(ss.str());
}

void save_key(const std::string& path, const KeyFile& k) {
    const std::string text = serialize_key(k);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(Errc::Io, "cannot write " + path);
    f << text;
    if (!f) fail(Errc::Io, "write failed for " + path);
}

std::string describe_key(const KeyFile& k) {
    const SchemeParams& p = k.prm;
    std::ostringstream o;
    o << "kind:      " << key_kind_name(k.kind) << (is_public(k.kind) ? " (public)" : " (private)") << "\n";
    o << "field:     GF(" << k.field->characteristic() << "^" << k.field->degree() << "), modulus";
    for (auto c : k.field->modulus()) o << " " << c;
    o << ", primitive " << k.field->primitive() << "\n";
    o << "group:     " << (p.group == Group::Units ? "F*" : "F") << "\n";
    o << "params:    mu=" << p.mu << " kappa=" << p.kappa << " L=" << p.L << " lambda=" << p.lambda
      << " nu=" << p.nu() << " sign=" << (p.sign ? 1 : 0) << (p.direct() ? " (direct mode)" : "") << "\n";
    o << "rng:       " << Rng::kName << " seed " << k.seed << "\n";
    for (auto& w : k.warnings) o << "WARNING:   " << w << "\n";
    auto list = [&](const char* name, const std::vector<Expr>& es) {
        for (std::size_t i = 0; i < es.size(); ++i)
            o << name << "_" << i + 1 << " = " << to_string(es[i]) << "  [" << node_count(es[i]) << " nodes]\n";
    };
    if (k.ht) {
        list("f", k.ht->f);
        list("Q", k.ht->Q);
        if (k.ht->eta) o << "eta = " << to_string(k.ht->eta->to_sexp()) << "\n";
        list("g", k.ht->g);
    }
    if (k.bt) {
        if (k.bt->zeta) o << "zeta = " << to_string(k.bt->zeta->to_sexp()) << "\n";
        for (std::size_t i = 0; i < k.bt->Tinv.size(); ++i) {
            o << "Tinv row " << i + 1 << ":";
            for (auto v : k.bt->Tinv[i]) o << " " << v;
            o << " | " << k.bt->offset[i] << "\n";
        }
        if (k.bt->tri) o << "tri = " << to_string(k.bt->tri->to_sexp()) << "\n";
    }
    if (k.st) {
        if (k.st->zeta) o << "zeta = " << to_string(k.st->zeta->to_sexp()) << "\n";
        if (k.st->tri) o << "tri = " << to_string(k.st->tri->to_sexp()) << "\n";
    }
    if (k.pub) {
        o << "form:      " << (k.pub->canonical ? "canonical polynomials" : "expression DAGs") << ", " << k.pub->arity
          << " variables\n";
        list(k.kind == KeyKind::SAT ? "S" : "P", k.pub->polys);
    }
    return o.str();
}

}  // namespace mvmap
