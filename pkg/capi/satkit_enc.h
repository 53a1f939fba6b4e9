/* satkit_enc.h - C interface to the satkit constraint encodings.
 *
 * Version 0.1.0. This header is hand-maintained and is the contract.
 *
 * Literals are IPASIR-style ints: nonzero, sign = polarity, variable ids
 * start at 1. Clauses are returned through a callback invoked once per
 * literal with 0 terminating each clause (the ipasir_add convention);
 * assumption literals are returned one callback invocation per literal
 * with no terminator.
 *
 * A handle owns one encoder plus a fresh-variable counter. Handles are
 * created with sk_encoder_new and released exactly once with
 * sk_encoder_drop; dropping a handle twice or using it afterwards is
 * undefined. A handle is confined to one thread; distinct handles are
 * independent. Callbacks must not call back into the handle - doing so
 * fails with SK_ERR_REENTRANT.
 *
 * Bound enforcement is assumption-based: encode_ub(lo, hi) emits whatever
 * clauses are missing so that every bound in [lo, hi] is enforceable, and
 * enforce_ub(k) then emits the assumption literals for bound k. Bounds
 * outside every encoded range fail with SK_ERR_NOT_ENCODED. Lower bounds
 * mirror the per-encoder capabilities: the totalizer and the adder
 * support both directions, the generalized totalizer and the watchdog are
 * upper-bound only, and the at-most-one encodings are one-shot (encode
 * with lo == hi == 1, no assumptions). The watchdog freezes its structure
 * at the first encode call; adding inputs afterwards fails with
 * SK_ERR_UNSUPPORTED.
 */

#ifndef SATKIT_ENC_H
#define SATKIT_ENC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SK_ENC_VERSION "0.1.0"

typedef struct SkEncoder SkEncoder;

enum SkEncoderKind {
    SK_ENC_TOTALIZER = 0,
    SK_ENC_GTE = 1,
    SK_ENC_ADDER = 2,
    SK_ENC_DPW = 3,
    SK_ENC_AM1_PAIRWISE = 4,
    SK_ENC_AM1_LADDER = 5,
    SK_ENC_AM1_BITWISE = 6,
    SK_ENC_AM1_COMMANDER = 7,
    SK_ENC_AM1_BIMANDER = 8
};

enum SkStatus {
    SK_OK = 0,
    SK_ERR_INVALID = -1,     /* bad argument (zero literal, bad kind, ...) */
    SK_ERR_NOT_ENCODED = -2, /* bound not covered by any encoded range */
    SK_ERR_UNSUPPORTED = -3, /* outside the encoder's capabilities */
    SK_ERR_REENTRANT = -4,   /* callback re-entered the handle */
    SK_ERR_NOMEM = -5
};

/* ipasir_add style: literals of a clause, then 0. */
typedef void (*sk_clause_cb)(int lit, void *data);
/* one invocation per assumption literal, no terminator. */
typedef void (*sk_assump_cb)(int lit, void *data);

/* Returns NULL for an unknown kind or on allocation failure. */
SkEncoder *sk_encoder_new(int kind);
void sk_encoder_drop(SkEncoder *enc);

/* Human-readable message for the last failing call on this handle. */
const char *sk_encoder_last_error(const SkEncoder *enc);

/* Register an input literal. weight must be 1 for the totalizer and the
 * at-most-one kinds and >= 1 for the pseudo-Boolean kinds. */
int sk_encoder_add_input(SkEncoder *enc, int lit, uint64_t weight);

/* Emit the missing clauses so every bound in [k_lo, k_hi] is enforceable.
 * next_free_var is in/out: on entry the first variable id the encoder may
 * allocate (must exceed every input variable); on exit one past the last
 * allocated variable. */
int sk_encoder_encode_ub(SkEncoder *enc, uint64_t k_lo, uint64_t k_hi,
                         sk_clause_cb cb, void *data, int *next_free_var);
int sk_encoder_encode_lb(SkEncoder *enc, uint64_t k_lo, uint64_t k_hi,
                         sk_clause_cb cb, void *data, int *next_free_var);

/* Emit the assumption literals enforcing the bound. */
int sk_encoder_enforce_ub(SkEncoder *enc, uint64_t k,
                          sk_assump_cb cb, void *data);
int sk_encoder_enforce_lb(SkEncoder *enc, uint64_t k,
                          sk_assump_cb cb, void *data);

#ifdef __cplusplus
}
#endif

#endif /* SATKIT_ENC_H */
