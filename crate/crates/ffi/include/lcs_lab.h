#ifndef LCS_LAB_H
#define LCS_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  LCS_LAB_STATUS_OK = 0,
  LCS_LAB_STATUS_NULL_POINTER = 1,
  LCS_LAB_STATUS_INVALID_SYMBOL = 2,
  LCS_LAB_STATUS_INVALID_ARGUMENT = 3,
  LCS_LAB_STATUS_BUFFER_TOO_SMALL = 4,
  LCS_LAB_STATUS_BUDGET_EXCEEDED = 5,
  LCS_LAB_STATUS_PANIC = 6,
} LcsLabStatus;

typedef enum {
  LCS_LAB_ENGINE_DP = 0,
  LCS_LAB_ENGINE_ROWS = 1,
  LCS_LAB_ENGINE_FSM = 2,
  LCS_LAB_ENGINE_POSET = 3,
} LcsLabEngine;

/**
 * Opaque handle to a binary sequence. Free with [`lcs_lab_sequence_free`].
 */
typedef struct LcsLabSequence LcsLabSequence;

typedef struct {
  size_t m;
  size_t n;
  size_t trials;
  double mean;
  /**
   * Standard error of `mean`.
   */
  double err;
  uint64_t seed;
} LcsLabTrialStats;

typedef struct {
  double alpha;
  size_t n;
  size_t m;
  double estimate;
  double err;
  size_t trials;
  uint64_t seed;
  /**
   * Only meaningful when `has_analytic` is set.
   */
  double analytic;
  bool has_analytic;
} LcsLabPsiPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `lcs_lab_*` call on this thread.
 */
const char *lcs_lab_last_error_message(void);

/**
 * Version of the trial random-number scheme; results are reproducible only
 * between builds reporting the same value.
 */
uint32_t lcs_lab_rng_version(void);

/**
 * Parse a NUL-terminated string of '0'/'1'.
 *
 * # Safety
 * `text` must be NULL or a valid NUL-terminated string; `out` must be NULL
 * or writable.
 */
LcsLabStatus lcs_lab_sequence_from_ascii(const char *text, LcsLabSequence **out);

/**
 * Build a sequence of `len` symbols from packed bytes, least significant
 * bit first within each byte.
 *
 * # Safety
 * `bytes` must point to `byte_len` readable bytes (it may be NULL when
 * `byte_len` is 0); `out` must be writable.
 */
LcsLabStatus lcs_lab_sequence_from_packed(const uint8_t *bytes,
                                          size_t byte_len,
                                          size_t len,
                                          LcsLabSequence **out);

/**
 * Uniform random sequence from the (`master`, `stream`) seed pair.
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_sequence_random(size_t len,
                                     uint64_t master,
                                     uint64_t stream,
                                     LcsLabSequence **out);

/**
 * Length of `seq`, or 0 for NULL.
 *
 * # Safety
 * `seq` must be NULL or a live handle.
 */
size_t lcs_lab_sequence_len(const LcsLabSequence *seq);

/**
 * # Safety
 * `seq` must be NULL or a handle not yet freed.
 */
void lcs_lab_sequence_free(LcsLabSequence *seq);

/**
 * # Safety
 * `x` and `y` must be live handles; `out` must be writable.
 */
LcsLabStatus lcs_lab_lcs_length(LcsLabEngine engine,
                                const LcsLabSequence *x,
                                const LcsLabSequence *y,
                                size_t *out);

/**
 * Writes `L(X[..k], Y)` for k = 0..=len(X) into `buf`. `written` always
 * receives the number of entries required; if `capacity` is smaller, nothing
 * is copied and `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must have room for `capacity` values; `written` must be writable.
 */
LcsLabStatus lcs_lab_prefix_lengths(const LcsLabSequence *x,
                                    const LcsLabSequence *y,
                                    size_t *buf,
                                    size_t capacity,
                                    size_t *written);

/**
 * Probability that a fixed length-`m` pattern embeds in a uniform
 * length-`n` text, rounded to double.
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_embed_prob(size_t m, size_t n, double *out);

/**
 * Same probability as an exact reduced fraction "a/b". Release the string
 * with [`lcs_lab_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_embed_prob_exact(size_t m, size_t n, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void lcs_lab_string_free(char *s);

/**
 * Monte Carlo estimate of `E L(n, n) / n`.
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_estimate_gamma(LcsLabEngine engine,
                                    size_t n,
                                    size_t trials,
                                    uint64_t seed,
                                    LcsLabTrialStats *out);

/**
 * Monte Carlo estimate of `E L(floor(alpha n), n) / n`.
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_estimate_psi(LcsLabEngine engine,
                                  double alpha,
                                  size_t n,
                                  size_t trials,
                                  uint64_t seed,
                                  LcsLabPsiPoint *out);

/**
 * Closed-form curve value for `0.5 <= alpha <= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
LcsLabStatus lcs_lab_psi_star(double alpha, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCS_LAB_H */
