#include <charconv>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvmap/mvmap.h"

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 malformed input, 3 domain or certificate failure.
constexpr int kExitMalformed = 2;

struct Usage {
    std::string why;
};

std::vector<uint64_t> parse_list(const std::string& s, char sep, const char* what) {
    std::vector<uint64_t> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    for (;;) {
        const auto end = s.find(sep, pos);
        const std::string tok = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw Usage{std::string("bad ") + what + " value '" + tok + "'"};
        out.push_back(v);
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return out;
}

std::string join(const std::vector<uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

int report(mvmap_status st) {
    if (st != MVMAP_OK) std::fprintf(stderr, "mvmap: %s\n", mvmap_last_error());
    return static_cast<int>(st);
}

using KeyPtr = std::unique_ptr<mvmap_key, decltype(&mvmap_key_free)>;

KeyPtr load(const std::string& path, mvmap_status& st) {
    mvmap_key* k = nullptr;
    st = mvmap_key_load(path.c_str(), &k);
    return KeyPtr(k, &mvmap_key_free);
}

struct Dims {
    size_t mu = 0, kappa = 0, L = 0, lambda = 0;
    uint64_t q = 0;
};

Dims dims(const mvmap_key* k) {
    Dims d;
    mvmap_key_dims(k, &d.mu, &d.kappa, &d.L, &d.lambda, &d.q);
    return d;
}

// Padding from --pad, or drawn from the generator seeded by --pad-seed.
mvmap_status padding(const mvmap_key* k, const std::string& pad, uint64_t pad_seed, std::vector<uint64_t>& out) {
    if (!pad.empty()) {
        out = parse_list(pad, ',', "padding");
        return MVMAP_OK;
    }
    out.assign(dims(k).kappa, 0);
    return mvmap_sample_padding(k, pad_seed, out.data(), out.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate bijection public-key encryption and signatures over finite fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mvmap_version()));

    // keygen
    auto* keygen = app.add_subcommand("keygen", "Generate key tables into a directory");
    keygen->require_subcommand(1);
    std::string field = "7,1", group = "units", out_dir;
    size_t mu = 2, kappa = 1, L = 1, lambda = 2;
    uint64_t seed = 0;
    auto add_keygen_opts = [&](CLI::App* c) {
        c->add_option("--field", field, "p,n[,c0:c1:...:cn] field GF(p^n) and optional monic modulus")
            ->capture_default_str();
        c->add_option("--group", group, "units (G = F*) or all (G = F)")->capture_default_str();
        c->add_option("--mu", mu, "plain message length")->capture_default_str();
        c->add_option("--kappa", kappa, "padding length")->capture_default_str();
        c->add_option("--L", L, "number of hash keys")->capture_default_str();
        c->add_option("--lambda", lambda, "number of hash values; 0 with L = kappa = 0 is direct mode")
            ->capture_default_str();
        c->add_option("--seed", seed, "generator seed")->required();
        c->add_option("--out-dir", out_dir, "output directory")->required();
    };
    auto* kg_pkc = keygen->add_subcommand("pkc", "Write HT.key, BT.key and LT.key");
    auto* kg_ds = keygen->add_subcommand("ds", "Write HT.key, ST.key, SVT.key and SAT.key");
    add_keygen_opts(kg_pkc);
    add_keygen_opts(kg_ds);

    std::string pub, priv, hash, auth, msg, pad, ct, sig, key;
    uint64_t pad_seed = 0;

    auto* enc = app.add_subcommand("encrypt", "Encrypt with a public LT key");
    enc->add_option("--pub", pub, "LT key file")->required();
    enc->add_option("--msg", msg, "plain message, comma separated")->required();
    auto* enc_pad = enc->add_option("--pad", pad, "padding, comma separated");
    enc->add_option("--pad-seed", pad_seed, "seed for drawing the padding")->excludes(enc_pad);

    auto* dec = app.add_subcommand("decrypt", "Decrypt with BT and HT keys");
    dec->add_option("--priv", priv, "BT key file")->required();
    dec->add_option("--hash", hash, "HT key file")->required();
    dec->add_option("--ct", ct, "ciphertext, comma separated")->required();

    auto* sgn = app.add_subcommand("sign", "Sign with ST and HT keys; prints the signature then the padding");
    sgn->add_option("--priv", priv, "ST key file")->required();
    sgn->add_option("--hash", hash, "HT key file")->required();
    sgn->add_option("--msg", msg, "plain message, comma separated")->required();
    auto* sgn_pad = sgn->add_option("--pad", pad, "padding, comma separated");
    sgn->add_option("--pad-seed", pad_seed, "seed for drawing the padding")->excludes(sgn_pad);

    auto* ver = app.add_subcommand("verify", "Recover the message from a signature with an SVT key");
    ver->add_option("--pub", pub, "SVT key file")->required();
    ver->add_option("--sig", sig, "signature, comma separated")->required();

    auto* aut = app.add_subcommand("authenticate", "Check a signature against message and padding with an SAT key");
    aut->add_option("--auth", auth, "SAT key file")->required();
    aut->add_option("--msg", msg, "plain message")->required();
    aut->add_option("--pad", pad, "padding")->required();
    aut->add_option("--sig", sig, "signature")->required();

    std::string level = "quick";
    auto* st = app.add_subcommand("selftest", "Run the built-in exhaustive invariant suites");
    st->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();

    auto* insp = app.add_subcommand("inspect", "Human-readable dump of a key file");
    insp->add_option("--key", key, "key file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitMalformed;
    }

    try {
        if (kg_pkc->parsed() || kg_ds->parsed()) {
            // p,n then an optional ':'-separated modulus.
            const auto c1 = field.find(',');
            const auto c2 = c1 == std::string::npos ? std::string::npos : field.find(',', c1 + 1);
            if (c1 == std::string::npos) throw Usage{"--field expects p,n[,c0:...:cn]"};
            const auto f = parse_list(field.substr(0, c2), ',', "field");
            std::vector<uint64_t> modulus;
            if (c2 != std::string::npos) modulus = parse_list(field.substr(c2 + 1), ':', "modulus");
            if (group != "units" && group != "all") throw Usage{"--group must be units or all"};
            mvmap_keygen_opts o{};
            o.p = f[0];
            o.n = static_cast<unsigned>(f[1]);
            o.modulus = modulus.empty() ? nullptr : modulus.data();
            o.modulus_len = modulus.size();
            o.group_all = group == "all";
            o.mu = mu;
            o.kappa = kappa;
            o.L = L;
            o.lambda = lambda;
            o.seed = seed;
            const bool ds = kg_ds->parsed();
            const auto s = ds ? mvmap_keygen_ds(&o, out_dir.c_str()) : mvmap_keygen_pkc(&o, out_dir.c_str());
            if (s != MVMAP_OK) return report(s);
            for (const char* n : ds ? std::vector<const char*>{"HT", "ST", "SVT", "SAT"}
                                    : std::vector<const char*>{"HT", "BT", "LT"})
                std::cout << "wrote " << out_dir << "/" << n << ".key\n";
            return 0;
        }
        mvmap_status s = MVMAP_OK;
        if (enc->parsed()) {
            auto k = load(pub, s);
            if (s != MVMAP_OK) return report(s);
            const auto xi = parse_list(msg, ',', "message");
            std::vector<uint64_t> om;
            if ((s = padding(k.get(), pad, pad_seed, om)) != MVMAP_OK) return report(s);
            const Dims d = dims(k.get());
            std::vector<uint64_t> out(d.mu + d.lambda);
            s = mvmap_encrypt(k.get(), xi.data(), xi.size(), om.data(), om.size(), out.data(), out.size());
            if (s != MVMAP_OK) return report(s);
            std::cout << join(out) << "\n";
            return 0;
        }
        if (dec->parsed()) {
            auto b = load(priv, s);
            if (s != MVMAP_OK) return report(s);
            auto h = load(hash, s);
            if (s != MVMAP_OK) return report(s);
            const auto e = parse_list(ct, ',', "ciphertext");
            std::vector<uint64_t> out(dims(b.get()).mu);
            s = mvmap_decrypt(b.get(), h.get(), e.data(), e.size(), out.data(), out.size());
            if (s != MVMAP_OK) return report(s);
            std::cout << join(out) << "\n";
            return 0;
        }
        if (sgn->parsed()) {
            auto k = load(priv, s);
            if (s != MVMAP_OK) return report(s);
            auto h = load(hash, s);
            if (s != MVMAP_OK) return report(s);
            const auto xi = parse_list(msg, ',', "message");
            std::vector<uint64_t> om;
            if ((s = padding(k.get(), pad, pad_seed, om)) != MVMAP_OK) return report(s);
            const Dims d = dims(k.get());
            std::vector<uint64_t> out(d.mu + d.lambda);
            s = mvmap_sign(k.get(), h.get(), xi.data(), xi.size(), om.data(), om.size(), out.data(), out.size());
            if (s != MVMAP_OK) return report(s);
            std::cout << join(out) << "\n" << join(om) << "\n";
            return 0;
        }
        if (ver->parsed()) {
            auto k = load(pub, s);
            if (s != MVMAP_OK) return report(s);
            const auto e = parse_list(sig, ',', "signature");
            std::vector<uint64_t> out(dims(k.get()).mu);
            s = mvmap_verify(k.get(), e.data(), e.size(), out.data(), out.size());
            if (s != MVMAP_OK) return report(s);
            std::cout << join(out) << "\n";
            return 0;
        }
        if (aut->parsed()) {
            auto k = load(auth, s);
            if (s != MVMAP_OK) return report(s);
            const auto xi = parse_list(msg, ',', "message");
            const auto om = parse_list(pad, ',', "padding");
            const auto e = parse_list(sig, ',', "signature");
            int genuine = 0;
            s = mvmap_authenticate(k.get(), xi.data(), xi.size(), om.data(), om.size(), e.data(), e.size(), &genuine);
            if (s != MVMAP_OK) return report(s);
            std::cout << (genuine ? "authentic" : "NOT authentic") << "\n";
            return genuine ? 0 : 1;
        }
        if (st->parsed()) {
            int failures = 0;
            s = mvmap_selftest(
                level == "full", [](const char* line, void*) { std::cout << line << "\n" << std::flush; }, nullptr,
                &failures);
            std::cout << (failures ? "selftest: " + std::to_string(failures) + " failure(s)" : std::string("selftest: all passed"))
                      << "\n";
            return s == MVMAP_OK ? 0 : (s == MVMAP_FAIL ? 1 : report(s));
        }
        if (insp->parsed()) {
            auto k = load(key, s);
            if (s != MVMAP_OK) return report(s);
            size_t need = 0;
            mvmap_key_describe(k.get(), nullptr, 0, &need);
            std::string buf(need, '\0');
            if ((s = mvmap_key_describe(k.get(), buf.data(), buf.size(), &need)) != MVMAP_OK) return report(s);
            std::cout << buf.c_str();
            return 0;
        }
    } catch (const Usage& u) {
        std::fprintf(stderr, "mvmap: %s\n", u.why.c_str());
        return kExitMalformed;
    }
    return kExitMalformed;
}
