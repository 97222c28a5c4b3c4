/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef WEIGHTED_CATALAN_H
#define WEIGHTED_CATALAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WcMethod {
  WC_METHOD_DP = 0,
  WC_METHOD_SERIES = 1,
  WC_METHOD_BRUTE_FORCE = 2,
} WcMethod;

/**
 * Result code of every call.
 */
typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_UTF8 = 2,
  WC_STATUS_PARSE = 3,
  WC_STATUS_DOMAIN = 4,
  WC_STATUS_NOT_IN_CLASS = 5,
  WC_STATUS_INEXACT = 6,
  WC_STATUS_BOUND_EXCEEDED = 7,
  WC_STATUS_OUT_OF_WINDOW = 8,
  WC_STATUS_MISMATCH = 9,
  WC_STATUS_INTERNAL = 10,
} WcStatus;

typedef enum WcVerdictKind {
  WC_VERDICT_KIND_PROVEN_MEMBER = 0,
  WC_VERDICT_KIND_PROVEN_NON_MEMBER = 1,
  WC_VERDICT_KIND_WINDOW_VERIFIED = 2,
} WcVerdictKind;

/**
 * Opaque weight sequence.
 */
typedef struct WcWeight WcWeight;

/**
 * Membership verdict. `witness_value` is owned by the caller after a
 * successful call and must be released with [`wc_verdict_clear`].
 */
typedef struct WcVerdict {
  enum WcVerdictKind kind;
  /**
   * Difference order of the witness; 0 means `b(0)` is even.
   */
  uint32_t witness_n;
  uint64_t witness_x;
  /**
   * Decimal value of the offending difference, or NULL.
   */
  char *witness_value;
  /**
   * Window actually checked, for `WindowVerified`.
   */
  uint32_t n_max;
  uint64_t x_max;
} WcVerdict;

typedef struct WcCensusSummary {
  uint32_t n;
  uint64_t orbits;
  uint32_t min_exponent;
  uint32_t predicted_min_exponent;
  uint64_t minimal_count;
  bool orbit_sizes_ok;
} WcCensusSummary;

typedef struct WcZeroBlock {
  uint64_t p;
  uint64_t k;
  uint64_t start;
  uint64_t observed;
  uint64_t predicted;
  bool complete;
  bool matches;
} WcZeroBlock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or NULL. The
 * pointer stays valid until the next call on this thread.
 */
const char *wc_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void wc_string_free(char *s);

/**
 * Parses a weight spec such as `oddsq`, `geom:5`, `poly:1,4` or `table:1,3,5`.
 */
enum WcStatus wc_weight_parse(const char *spec, struct WcWeight **out);

/**
 * Builds a table weight from `len` values.
 */
enum WcStatus wc_weight_from_table(const int64_t *values, size_t len, struct WcWeight **out);

/**
 * Releases a weight handle. NULL is ignored.
 */
void wc_weight_free(struct WcWeight *w);

/**
 * Canonical spec string of a weight.
 */
enum WcStatus wc_weight_to_string(const struct WcWeight *w, char **out);

enum WcStatus wc_weight_evaluate(const struct WcWeight *w, uint64_t x, char **out);

/**
 * Classical Catalan number `C_n`.
 */
enum WcStatus wc_catalan(uint32_t n, char **out);

/**
 * Weighted Catalan number `C_n^b`. `brute_bound` caps `n` for
 * `BruteForce` and is ignored otherwise.
 */
enum WcStatus wc_weighted_catalan(const struct WcWeight *w,
                                  uint32_t n,
                                  enum WcMethod method,
                                  uint32_t brute_bound,
                                  char **out);

/**
 * Decides or window-checks membership in the class F.
 */
enum WcStatus wc_check_membership(const struct WcWeight *w,
                                  uint32_t n_max,
                                  uint64_t x_max,
                                  struct WcVerdict *out);

/**
 * Frees the witness string of a verdict and resets it to NULL.
 */
void wc_verdict_clear(struct WcVerdict *v);

/**
 * Exponent of the largest power of `base` dividing the decimal integer
 * `value`.
 */
enum WcStatus wc_xi(const char *value, uint64_t base, uint64_t *out);

/**
 * Checks `xi(C_n^b) = s(n+1) - 1` for `n <= n_max`. Returns `NotInClass`
 * for rejected weights; otherwise `*all_match` reports the sweep.
 */
enum WcStatus wc_verify_weighted(const struct WcWeight *w,
                                 uint32_t n_max,
                                 uint32_t window_n,
                                 uint64_t window_x,
                                 bool *all_match);

/**
 * Summary of the orbit census of binary trees with `n` vertices.
 */
enum WcStatus wc_orbit_census(uint32_t n, uint32_t bound, struct WcCensusSummary *out);

/**
 * Zero blocks of `C_n mod p` for `n <= n_max`. Writes at most `cap`
 * blocks to `out` and the total found to `*count`; pass `cap = 0` to query
 * the count.
 */
enum WcStatus wc_zero_blocks(uint64_t p,
                             uint64_t n_max,
                             uint64_t k_max,
                             struct WcZeroBlock *out,
                             size_t cap,
                             size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIGHTED_CATALAN_H */
