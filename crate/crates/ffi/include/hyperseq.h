#ifndef HYPERSEQ_H
#define HYPERSEQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the command-line exit codes.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_FAILURE = 1,
  HS_STATUS_NO_GUESS = 2,
  HS_STATUS_NO_BASIS = 3,
  HS_STATUS_PARSE = 4,
  HS_STATUS_CAP_EXCEEDED = 5,
  HS_STATUS_NULL_ARGUMENT = 6,
} HsStatus;

/**
 * Opaque rational function.
 */
typedef struct HsRatFun HsRatFun;

/**
 * Opaque series representation.
 */
typedef struct HsRepresentation HsRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a rational function expression such as `1/(1-x)`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_ratfun_parse(const char *expr, struct HsRatFun **out);

/**
 * Guess a rational generating function from a term list such as
 * `"1, 1, 2, 3, 5"`, with the default degree budget and `guard` held-back
 * terms.
 *
 * # Safety
 * `terms` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_guess(const char *terms, uintptr_t guard, struct HsRatFun **out);

/**
 * Expression text of `f` in the variable `x`, or null on failure.
 *
 * # Safety
 * `f` must be a handle from this library or null.
 */
char *hs_ratfun_to_string(const struct HsRatFun *f);

/**
 * First `count` series coefficients, comma separated, or null on failure.
 *
 * # Safety
 * `f` must be a handle from this library or null.
 */
char *hs_ratfun_series(const struct HsRatFun *f, uintptr_t count);

/**
 * # Safety
 * `f` must be a handle from this library or null; it must not be used afterwards.
 */
void hs_ratfun_free(struct HsRatFun *f);

/**
 * Build the representation of `f`. `m_max == 0` picks the default bound;
 * `depth` is the number of coefficients the fit must reproduce.
 *
 * # Safety
 * `f` must be a handle from this library and `out` a valid pointer.
 */
enum HsStatus hs_fps_build(const struct HsRatFun *f,
                           uintptr_t m_max,
                           uintptr_t depth,
                           struct HsRepresentation **out);

/**
 * Render as `text`, `latex`, `json` or `formula` with variables `x` and
 * `n`. Null on failure.
 *
 * # Safety
 * `rep` must be a handle from this library and `format` a NUL-terminated string.
 */
char *hs_representation_render(const struct HsRepresentation *rep, const char *format);

/**
 * Parse a JSON representation.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_representation_from_json(const char *json, struct HsRepresentation **out);

/**
 * Compare `count` coefficients. `all_match` receives 1 or 0; on a mismatch
 * `first_mismatch` receives its index.
 *
 * # Safety
 * Handles must come from this library; output pointers must be valid.
 */
enum HsStatus hs_verify(const struct HsRepresentation *rep,
                        const struct HsRatFun *f,
                        uintptr_t count,
                        int32_t *all_match,
                        uintptr_t *first_mismatch);

/**
 * # Safety
 * `rep` must be a handle from this library or null; it must not be used afterwards.
 */
void hs_representation_free(struct HsRepresentation *rep);

/**
 * # Safety
 * `s` must be a string returned by this library or null.
 */
void hs_string_free(char *s);

/**
 * Message of the last failure on this thread; empty after a success.
 * Valid until the next call into the library from the same thread.
 */
const char *hs_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSEQ_H */
