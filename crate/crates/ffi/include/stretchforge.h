#ifndef STRETCHFORGE_H
#define STRETCHFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_UTF8 = 2,
  SF_STATUS_INVALID_JSON = 3,
  SF_STATUS_INVALID_ARGUMENT = 4,
  SF_STATUS_VAR_MISMATCH = 5,
  SF_STATUS_NOT_TANGENT = 6,
  SF_STATUS_NOT_A_GERM = 7,
  SF_STATUS_NOT_INVERTIBLE = 8,
  SF_STATUS_PRECONDITION = 9,
  SF_STATUS_NOT_CLOSED = 10,
  SF_STATUS_INTERNAL = 11,
} SfStatus;

/**
 * A vector field in collar coordinates.
 */
typedef struct SfCollarField SfCollarField;

/**
 * A stretching germ.
 */
typedef struct SfGerm SfGerm;

/**
 * A truncated multivariate power series.
 */
typedef struct SfSeries SfSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The string
 * stays valid until the next call into the library on the same thread.
 */
const char *sf_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sf_string_free(char *s);

/**
 * Parses a series from its JSON form
 * `{"vars": n, "order": d, "terms": [{"exp": [...], "num": "a", "den": "b"}]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_series_from_json(const char *json, struct SfSeries **out);

/**
 * # Safety
 * `s` must be a live series handle and `out` a valid pointer.
 */
enum SfStatus sf_series_to_json(const struct SfSeries *s, char **out);

/**
 * # Safety
 * `a`, `b` must be live series handles and `out` a valid pointer.
 */
enum SfStatus sf_series_add(const struct SfSeries *a,
                            const struct SfSeries *b,
                            struct SfSeries **out);

/**
 * # Safety
 * `a`, `b` must be live series handles and `out` a valid pointer.
 */
enum SfStatus sf_series_mul(const struct SfSeries *a,
                            const struct SfSeries *b,
                            struct SfSeries **out);

/**
 * # Safety
 * `s` must be null or a series handle not yet freed.
 */
void sf_series_free(struct SfSeries *s);

/**
 * Builds a germ from a univariate series with positive valuation and
 * positive leading coefficient.
 *
 * # Safety
 * `s` must be a live series handle and `out` a valid pointer.
 */
enum SfStatus sf_germ_from_series(const struct SfSeries *s, struct SfGerm **out);

/**
 * The germ `y^p` truncated at `order`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_germ_power(uint32_t p, uint32_t order, struct SfGerm **out);

/**
 * # Safety
 * `g` must be a live germ handle and `out` a valid pointer.
 */
enum SfStatus sf_germ_valuation(const struct SfGerm *g, uint32_t *out);

/**
 * # Safety
 * `g` must be null or a germ handle not yet freed.
 */
void sf_germ_free(struct SfGerm *g);

/**
 * The germ relating the Klein and Poincaré collar coordinates.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_klein_poincare_germ(uint32_t order, struct SfGerm **out);

/**
 * Parses a collar field from JSON.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_collar_from_json(const char *json, struct SfCollarField **out);

/**
 * # Safety
 * `vf` must be a live field handle and `out` a valid pointer.
 */
enum SfStatus sf_collar_to_json(const struct SfCollarField *vf, char **out);

/**
 * # Safety
 * `vf` must be null or a field handle not yet freed.
 */
void sf_collar_free(struct SfCollarField *vf);

/**
 * Pullback by `(x, y) -> (x, y^p)`.
 *
 * # Safety
 * `vf` must be a live field handle and `out` a valid pointer.
 */
enum SfStatus sf_pullback_analytic(const struct SfCollarField *vf,
                                   uint32_t p,
                                   struct SfCollarField **out);

/**
 * Pullback by `(x, y) -> (x, f(y))`.
 *
 * # Safety
 * `vf`, `f` must be live handles and `out` a valid pointer.
 */
enum SfStatus sf_pullback_smooth(const struct SfCollarField *vf,
                                 const struct SfGerm *f,
                                 struct SfCollarField **out);

/**
 * Eigenvalue multiplicities of the geodesic symmetry around a complex
 * line of complex hyperbolic `m`-space.
 *
 * # Safety
 * `plus` and `minus` must be valid pointers.
 */
enum SfStatus sf_complex_symmetry_multiplicities(uint32_t m, uint32_t *plus, uint32_t *minus);

/**
 * Condition (A) proxy for a built-in algebra (or JSON file) and an
 * optional subalgebra name; `subalgebra` may be null for the stabilizer.
 *
 * # Safety
 * `algebra` must be a nul-terminated string, `subalgebra` null or one, and
 * `holds` a valid pointer.
 */
enum SfStatus sf_condition_a(const char *algebra, const char *subalgebra, bool *holds);

/**
 * Whether the stretch class `a` is tighter than `b`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_is_tighter(uint32_t a, uint32_t b, bool *out);

/**
 * Conjugacy certificate for the classes `a` and `b`, as JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_certificate_json(uint32_t a, uint32_t b, bool condition_a, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRETCHFORGE_H */
