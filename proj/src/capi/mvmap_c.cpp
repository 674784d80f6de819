#include "mvmap/mvmap.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "mvmap/keyfile.hpp"
#include "mvmap/selftest.hpp"

struct mvmap_key {
    mvmap::KeyFile file;
};

namespace {

thread_local std::string g_last_error;

mvmap_status status_of(mvmap::Errc c) {
    using mvmap::Errc;
    switch (c) {
        case Errc::Parse:
        case Errc::Io:
        case Errc::InvalidArgument:
        case Errc::NotPrime:
        case Errc::Reducible:
        case Errc::TooLarge:
        case Errc::SizesMismatch: return MVMAP_MALFORMED;
        default: return MVMAP_DOMAIN;
    }
}

template <class Fn>
mvmap_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const mvmap::Error& e) {
        g_last_error = std::string(mvmap::errc_name(e.code())) + ": " + e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = std::string("internal: ") + e.what();
        return MVMAP_INTERNAL;
    } catch (...) {
        g_last_error = "internal: unknown exception";
        return MVMAP_INTERNAL;
    }
}

mvmap_status malformed(const std::string& why) {
    g_last_error = why;
    return MVMAP_MALFORMED;
}

std::span<const uint64_t> view(const uint64_t* p, size_t n) { return {p, n}; }

const mvmap::KeyFile& need(const mvmap_key* k, mvmap::KeyKind kind) {
    if (!k) mvmap::fail(mvmap::Errc::InvalidArgument, "null key");
    if (k->file.kind != kind)
        mvmap::fail(mvmap::Errc::InvalidArgument, std::string("expected a ") + mvmap::key_kind_name(kind) +
                                                      " key, got " + mvmap::key_kind_name(k->file.kind));
    return k->file;
}

// Private tables from one keygen share field, params and seed.
void same_keygen(const mvmap::KeyFile& a, const mvmap::KeyFile& b) {
    if (!(*a.field == *b.field) || !(a.prm == b.prm) || a.seed != b.seed)
        mvmap::fail(mvmap::Errc::InvalidArgument, "keys come from different key generations");
}

void copy_out(const std::vector<mvmap::Value>& v, uint64_t* out, size_t out_len) {
    if (!out || out_len != v.size())
        mvmap::fail(mvmap::Errc::InvalidArgument,
                    "output buffer holds " + std::to_string(out_len) + " values, need " + std::to_string(v.size()));
    std::copy(v.begin(), v.end(), out);
}

mvmap_status keygen(const mvmap_keygen_opts* o, const char* out_dir, bool ds) {
    if (!o || !out_dir) return malformed("null argument");
    return guarded([&] {
        std::shared_ptr<const mvmap::Field> F;
        if (o->modulus && o->modulus_len)
            F = std::make_shared<const mvmap::Field>(o->p, o->n,
                                                     std::vector<uint64_t>(o->modulus, o->modulus + o->modulus_len));
        else
            F = std::make_shared<const mvmap::Field>(mvmap::Field::with_default_modulus(o->p, o->n));
        const mvmap::Ctx ctx(F);
        mvmap::SchemeParams prm{o->mu, o->kappa, o->L, o->lambda, ds,
                                o->group_all ? mvmap::Group::All : mvmap::Group::Units};
        prm.validate(ctx);
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        auto save = [&](const char* name, const mvmap::KeyFile& k) { mvmap::save_key((dir / name).string(), k); };
        if (ds) {
            auto k = mvmap::ds_keygen(ctx, prm, o->seed);
            save("HT.key", mvmap::make_key(ctx, o->seed, k.ht));
            save("ST.key", mvmap::make_key(ctx, o->seed, k.st));
            save("SVT.key", mvmap::make_key(ctx, o->seed, mvmap::KeyKind::SVT, k.svt));
            save("SAT.key", mvmap::make_key(ctx, o->seed, mvmap::KeyKind::SAT, k.sat));
        } else {
            auto k = mvmap::pkc_keygen(ctx, prm, o->seed);
            save("HT.key", mvmap::make_key(ctx, o->seed, k.ht));
            save("BT.key", mvmap::make_key(ctx, o->seed, k.bt));
            save("LT.key", mvmap::make_key(ctx, o->seed, mvmap::KeyKind::LT, k.lt));
        }
        return MVMAP_OK;
    });
}

}  // namespace

extern "C" {

const char* mvmap_version(void) { return "1.0.0"; }

const char* mvmap_last_error(void) { return g_last_error.c_str(); }

mvmap_status mvmap_keygen_pkc(const mvmap_keygen_opts* opts, const char* out_dir) { return keygen(opts, out_dir, false); }

mvmap_status mvmap_keygen_ds(const mvmap_keygen_opts* opts, const char* out_dir) { return keygen(opts, out_dir, true); }

mvmap_status mvmap_key_load(const char* path, mvmap_key** out) {
    if (!path || !out) return malformed("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new mvmap_key{mvmap::load_key(path)};
        return MVMAP_OK;
    });
}

mvmap_status mvmap_key_parse(const char* text, size_t len, mvmap_key** out) {
    if (!text || !out) return malformed("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new mvmap_key{mvmap::parse_key(std::string_view(text, len))};
        return MVMAP_OK;
    });
}

void mvmap_key_free(mvmap_key* key) { delete key; }

const char* mvmap_key_kind(const mvmap_key* key) { return key ? mvmap::key_kind_name(key->file.kind) : ""; }

mvmap_status mvmap_key_dims(const mvmap_key* key, size_t* mu, size_t* kappa, size_t* L, size_t* lambda, uint64_t* q) {
    if (!key) return malformed("null key");
    const auto& p = key->file.prm;
    if (mu) *mu = p.mu;
    if (kappa) *kappa = p.kappa;
    if (L) *L = p.L;
    if (lambda) *lambda = p.lambda;
    if (q) *q = key->file.field->order();
    return MVMAP_OK;
}

mvmap_status mvmap_key_describe(const mvmap_key* key, char* buf, size_t cap, size_t* needed) {
    if (!key) return malformed("null key");
    return guarded([&] {
        const std::string s = mvmap::describe_key(key->file);
        if (needed) *needed = s.size() + 1;
        if (!buf || cap < s.size() + 1) {
            g_last_error = "buffer too small";
            return buf ? MVMAP_MALFORMED : MVMAP_OK;
        }
        std::memcpy(buf, s.c_str(), s.size() + 1);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_sample_padding(const mvmap_key* key, uint64_t seed, uint64_t* out, size_t len) {
    if (!key) return malformed("null key");
    return guarded([&] {
        mvmap::Rng rng(seed);
        copy_out(mvmap::sample_padding(key->file.ctx(), key->file.prm, rng), out, len);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_encrypt(const mvmap_key* lt, const uint64_t* xi, size_t xi_len, const uint64_t* omega,
                           size_t omega_len, uint64_t* out, size_t out_len) {
    return guarded([&] {
        const auto& k = need(lt, mvmap::KeyKind::LT);
        copy_out(mvmap::pkc_encrypt(k.ctx(), *k.pub, view(xi, xi_len), view(omega, omega_len)), out, out_len);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_decrypt(const mvmap_key* bt, const mvmap_key* ht, const uint64_t* ct, size_t ct_len, uint64_t* out,
                           size_t out_len) {
    return guarded([&] {
        const auto& b = need(bt, mvmap::KeyKind::BT);
        const auto& h = need(ht, mvmap::KeyKind::HT);
        same_keygen(b, h);
        copy_out(mvmap::pkc_decrypt(b.ctx(), *b.bt, *h.ht, view(ct, ct_len)), out, out_len);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_sign(const mvmap_key* st, const mvmap_key* ht, const uint64_t* xi, size_t xi_len,
                        const uint64_t* omega, size_t omega_len, uint64_t* out, size_t out_len) {
    return guarded([&] {
        const auto& s = need(st, mvmap::KeyKind::ST);
        const auto& h = need(ht, mvmap::KeyKind::HT);
        same_keygen(s, h);
        copy_out(mvmap::ds_sign(s.ctx(), *s.st, *h.ht, view(xi, xi_len), view(omega, omega_len)), out, out_len);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_verify(const mvmap_key* svt, const uint64_t* sig, size_t sig_len, uint64_t* out, size_t out_len) {
    return guarded([&] {
        const auto& k = need(svt, mvmap::KeyKind::SVT);
        copy_out(mvmap::ds_verify(k.ctx(), *k.pub, view(sig, sig_len)), out, out_len);
        return MVMAP_OK;
    });
}

mvmap_status mvmap_authenticate(const mvmap_key* sat, const uint64_t* xi, size_t xi_len, const uint64_t* omega,
                                size_t omega_len, const uint64_t* sig, size_t sig_len, int* genuine) {
    if (!genuine) return malformed("null argument");
    return guarded([&] {
        const auto& k = need(sat, mvmap::KeyKind::SAT);
        const bool ok =
            mvmap::ds_authenticate(k.ctx(), *k.pub, view(xi, xi_len), view(omega, omega_len), view(sig, sig_len));
        *genuine = ok ? 1 : 0;
        return MVMAP_OK;
    });
}

mvmap_status mvmap_selftest(int full, mvmap_line_fn fn, void* user, int* failures) {
    return guarded([&] {
        const int f = mvmap::run_selftest(full != 0, [&](const std::string& line) {
            if (fn) fn(line.c_str(), user);
        });
        if (failures) *failures = f;
        return f ? MVMAP_FAIL : MVMAP_OK;
    });
}

}  // extern "C"
