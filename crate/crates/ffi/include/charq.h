#ifndef CHARQ_H
#define CHARQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum CharqStatus {
  CHARQ_STATUS_OK = 0,
  CHARQ_STATUS_NULL_POINTER = 1,
  CHARQ_STATUS_INVALID_UTF8 = 2,
  CHARQ_STATUS_INVALID_INPUT = 3,
  CHARQ_STATUS_NON_SYMMETRIC = 4,
  CHARQ_STATUS_NOT_EXPANDABLE = 5,
  CHARQ_STATUS_NO_FIT = 6,
  CHARQ_STATUS_INSUFFICIENT_PREFIX = 7,
  CHARQ_STATUS_UNSUPPORTED = 8,
  CHARQ_STATUS_ARITHMETIC = 9,
  CHARQ_STATUS_OUT_OF_RANGE = 10,
  CHARQ_STATUS_PANIC = 11,
} CharqStatus;

/**
 * A truncated series in `q` with Laurent polynomial coefficients.
 */
typedef struct CharqCharacter CharqCharacter;

/**
 * A subgroup of `GL_n` from one of the supported classes.
 */
typedef struct CharqGroup CharqGroup;

/**
 * A nice rational function `P(t, q) / prod (1 - t^alpha q^k)`.
 */
typedef struct CharqRational CharqRational;

/**
 * A truncated integer series in `q`.
 */
typedef struct CharqSeries CharqSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *charq_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *charq_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void charq_string_free(char *s);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CharqStatus charq_rational_from_json(const char *json, struct CharqRational **out);

/**
 * The two-variable multigraded series used as the running example.
 *
 * # Safety
 * `out` must be writable.
 */
enum CharqStatus charq_rational_fhl(struct CharqRational **out);

/**
 * Substitutes `t_i -> t_i q`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_rational_substitute(const struct CharqRational *f,
                                           struct CharqRational **out);

/**
 * Expands by `q`-degree through `q^order`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_rational_series(const struct CharqRational *f,
                                       size_t order,
                                       struct CharqCharacter **out);

/**
 * Symmetrized decomposition, written as JSON.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_rational_decompose_json(const struct CharqRational *f, char **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_rational_to_json(const struct CharqRational *f, char **out);

/**
 * # Safety
 * `f` must be null or a handle from this library, not yet freed.
 */
void charq_rational_free(struct CharqRational *f);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CharqStatus charq_group_from_json(const char *json, struct CharqGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void charq_group_free(struct CharqGroup *g);

/**
 * Character of the tensor algebra on `n` generators through `q^order`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CharqStatus charq_character_free_algebra(size_t n, size_t order, struct CharqCharacter **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CharqStatus charq_character_from_json(const char *json, struct CharqCharacter **out);

/**
 * # Safety
 * `ch` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_character_to_json(const struct CharqCharacter *ch, char **out);

/**
 * # Safety
 * `ch` must be null or a handle from this library, not yet freed.
 */
void charq_character_free(struct CharqCharacter *ch);

/**
 * Hilbert series of the `G`-invariants: `D` applied per `q`-degree.
 *
 * # Safety
 * `g` and `ch` must be live handles; `out` must be writable.
 */
enum CharqStatus charq_hilbert_invariants(const struct CharqGroup *g,
                                          const struct CharqCharacter *ch,
                                          struct CharqSeries **out);

/**
 * Nagata invariant series through `q^order`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CharqStatus charq_series_nagata(size_t order, struct CharqSeries **out);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CharqStatus charq_series_from_json(const char *json, struct CharqSeries **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_series_to_json(const struct CharqSeries *s, char **out);

/**
 * Highest stored degree; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t charq_series_order(const struct CharqSeries *s);

/**
 * Coefficient of `q^degree`; `OutOfRange` if absent or not representable.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CharqStatus charq_series_coeff(const struct CharqSeries *s, size_t degree, int64_t *out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void charq_series_free(struct CharqSeries *s);

/**
 * Fits `P(q) / prod (1 - q^degs[i])`. The JSON report is written on
 * success and on `NoFit`.
 *
 * # Safety
 * `s` must be a live handle; `degs` must point to `ndegs` values (or be
 * null with `ndegs == 0`); `report` must be writable.
 */
enum CharqStatus charq_fit(const struct CharqSeries *s,
                           const uint32_t *degs,
                           size_t ndegs,
                           size_t guard_terms,
                           char **report);

/**
 * Schur expansion of a Laurent polynomial given as JSON.
 *
 * # Safety
 * `poly_json` must be a nul-terminated string; `out` must be writable.
 */
enum CharqStatus charq_schur_expand_json(const char *poly_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARQ_H */
