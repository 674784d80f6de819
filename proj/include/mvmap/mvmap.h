#ifndef MVMAP_H
#define MVMAP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(MVMAP_BUILDING_LIBRARY)
#define MVMAP_API __attribute__((visibility("default")))
#else
#define MVMAP_API
#endif

/* Every call returns one of these; the message of the most recent failure on
   the calling thread is available from mvmap_last_error(). */
typedef enum mvmap_status {
    MVMAP_OK = 0,
    MVMAP_FAIL = 1,      /* a check came out negative */
    MVMAP_MALFORMED = 2, /* unparsable input, bad arguments, mismatched keys */
    MVMAP_DOMAIN = 3,    /* value outside its domain, not in the image, certificate failure */
    MVMAP_INTERNAL = 4
} mvmap_status;

/* A loaded key file (any of HT, BT, LT, ST, SVT, SAT). */
typedef struct mvmap_key mvmap_key;

/* Field elements are packed integers sum c_i p^i. */
typedef struct mvmap_keygen_opts {
    uint64_t p;
    unsigned n;
    const uint64_t* modulus; /* n + 1 coefficients low to high, or NULL for the default */
    size_t modulus_len;
    int group_all;           /* 0: G = F*, 1: G = F */
    size_t mu, kappa, L, lambda;
    uint64_t seed;
} mvmap_keygen_opts;

typedef void (*mvmap_line_fn)(const char* line, void* user);

MVMAP_API const char* mvmap_version(void);
MVMAP_API const char* mvmap_last_error(void);

/* Writes HT.key, BT.key, LT.key (pkc) or HT.key, ST.key, SVT.key, SAT.key (ds)
   into out_dir, creating it if needed. lambda = L = kappa = 0 selects direct mode. */
MVMAP_API mvmap_status mvmap_keygen_pkc(const mvmap_keygen_opts* opts, const char* out_dir);
MVMAP_API mvmap_status mvmap_keygen_ds(const mvmap_keygen_opts* opts, const char* out_dir);

MVMAP_API mvmap_status mvmap_key_load(const char* path, mvmap_key** out);
MVMAP_API mvmap_status mvmap_key_parse(const char* text, size_t len, mvmap_key** out);
MVMAP_API void mvmap_key_free(mvmap_key* key);
/* "HT", "BT", "LT", "ST", "SVT" or "SAT". */
MVMAP_API const char* mvmap_key_kind(const mvmap_key* key);
MVMAP_API mvmap_status mvmap_key_dims(const mvmap_key* key, size_t* mu, size_t* kappa, size_t* L, size_t* lambda,
                                      uint64_t* q);
/* NUL-terminated dump; *needed receives the required size including the NUL.
   A NULL buf only queries the size; a non-NULL buf that is too small is MALFORMED. */
MVMAP_API mvmap_status mvmap_key_describe(const mvmap_key* key, char* buf, size_t cap, size_t* needed);

/* kappa padding values drawn from the seeded generator. */
MVMAP_API mvmap_status mvmap_sample_padding(const mvmap_key* key, uint64_t seed, uint64_t* out, size_t len);

MVMAP_API mvmap_status mvmap_encrypt(const mvmap_key* lt, const uint64_t* xi, size_t xi_len, const uint64_t* omega,
                                     size_t omega_len, uint64_t* out, size_t out_len);
MVMAP_API mvmap_status mvmap_decrypt(const mvmap_key* bt, const mvmap_key* ht, const uint64_t* ct, size_t ct_len,
                                     uint64_t* out, size_t out_len);
MVMAP_API mvmap_status mvmap_sign(const mvmap_key* st, const mvmap_key* ht, const uint64_t* xi, size_t xi_len,
                                  const uint64_t* omega, size_t omega_len, uint64_t* out, size_t out_len);
MVMAP_API mvmap_status mvmap_verify(const mvmap_key* svt, const uint64_t* sig, size_t sig_len, uint64_t* out,
                                    size_t out_len);
/* *genuine is 1 when every S_i(xi, omega) matches the signature, else 0. */
MVMAP_API mvmap_status mvmap_authenticate(const mvmap_key* sat, const uint64_t* xi, size_t xi_len,
                                          const uint64_t* omega, size_t omega_len, const uint64_t* sig,
                                          size_t sig_len, int* genuine);

/* Runs the built-in suites; returns MVMAP_FAIL when any check fails. */
MVMAP_API mvmap_status mvmap_selftest(int full, mvmap_line_fn fn, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
