#ifndef CARKWORK_H
#define CARKWORK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwElementKind {
  CW_ELEMENT_KIND_ELLIPTIC = 0,
  CW_ELEMENT_KIND_PARABOLIC = 1,
  CW_ELEMENT_KIND_HYPERBOLIC = 2,
} CwElementKind;

typedef enum CwFormKind {
  CW_FORM_KIND_DEGENERATE = 0,
  CW_FORM_KIND_POSITIVE_DEFINITE = 1,
  CW_FORM_KIND_NEGATIVE_DEFINITE = 2,
  CW_FORM_KIND_INDEFINITE = 3,
} CwFormKind;

/**
 * Result of every fallible call.
 */
typedef enum CwStatus {
  CW_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CW_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  CW_STATUS_INVALID_UTF8 = 2,
  /**
   * A string argument could not be parsed, or a request was malformed.
   */
  CW_STATUS_INVALID_ARGUMENT = 3,
  /**
   * The input lies outside the operation's domain, e.g. a definite form
   * passed to an operation on indefinite forms.
   */
  CW_STATUS_DOMAIN = 4,
  /**
   * An internal consistency check failed.
   */
  CW_STATUS_INTERNAL = 5,
  /**
   * A panic was caught at the boundary.
   */
  CW_STATUS_PANIC = 6,
} CwStatus;

/**
 * Opaque element of the modular group.
 */
typedef struct CwElement CwElement;

/**
 * Opaque binary quadratic form.
 */
typedef struct CwForm CwForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cw_version(void);

/**
 * Message of the last failure on this thread, or NULL after a success.
 * The pointer stays valid until the next call into the library on this
 * thread.
 */
const char *cw_last_error_message(void);

/**
 * Stable code of the last failure on this thread (for example
 * `not_indefinite`), or NULL after a success. Same lifetime as
 * [`cw_last_error_message`].
 */
const char *cw_last_error_code(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void cw_string_free(char *s);

enum CwStatus cw_form_new(int64_t a, int64_t b, int64_t c, struct CwForm **out);

/**
 * Parses `a,b,c` with arbitrary-size decimal coefficients.
 */
enum CwStatus cw_form_parse(const char *text, struct CwForm **out);

void cw_form_free(struct CwForm *f);

/**
 * Writes `(a,b,c)`.
 */
enum CwStatus cw_form_to_string(const struct CwForm *f, char **out);

enum CwStatus cw_form_discriminant(const struct CwForm *f, char **out);

enum CwStatus cw_form_kind(const struct CwForm *f, enum CwFormKind *out);

/**
 * `f(x, y)` as a decimal string.
 */
enum CwStatus cw_form_evaluate(const struct CwForm *f, int64_t x, int64_t y, char **out);

enum CwStatus cw_form_is_on_spine(const struct CwForm *f, bool *out);

/**
 * The form `f . m`, i.e. `f(m (x, y))`.
 */
enum CwStatus cw_form_act(const struct CwForm *f, const struct CwElement *m, struct CwForm **out);

/**
 * Gauss reduced form equivalent to an indefinite form.
 */
enum CwStatus cw_form_gauss_reduce(const struct CwForm *f, struct CwForm **out);

/**
 * First spine form reached from an indefinite form.
 */
enum CwStatus cw_form_spine_entry(const struct CwForm *f, struct CwForm **out);

/**
 * A generator of the stabilizer of an indefinite form.
 */
enum CwStatus cw_form_automorph(const struct CwForm *f, struct CwElement **out);

/**
 * Solves `f(x, y) = n` for an indefinite form, `n` given in decimal.
 * `found` is set to false when there is no solution, in which case `x_out`
 * and `y_out` are set to NULL.
 */
enum CwStatus cw_form_solve(const struct CwForm *f,
                            const char *n,
                            bool *found,
                            char **x_out,
                            char **y_out);

enum CwStatus cw_element_new(int64_t p, int64_t q, int64_t r, int64_t s, struct CwElement **out);

/**
 * Parses `p,q,r,s` or a word over `S`, `L` such as `LSLLS`.
 */
enum CwStatus cw_element_parse(const char *text, struct CwElement **out);

void cw_element_free(struct CwElement *m);

/**
 * Writes `(p q; r s)` in sign-normalised form.
 */
enum CwStatus cw_element_to_string(const struct CwElement *m, char **out);

/**
 * Normal-form word, `LL` standing for `L^2`. The identity is the empty
 * string.
 */
enum CwStatus cw_element_to_word(const struct CwElement *m, char **out);

enum CwStatus cw_element_kind(const struct CwElement *m, enum CwElementKind *out);

enum CwStatus cw_element_multiply(const struct CwElement *a,
                                  const struct CwElement *b,
                                  struct CwElement **out);

enum CwStatus cw_element_inverse(const struct CwElement *m, struct CwElement **out);

/**
 * Primitive form whose stabilizer contains the element.
 */
enum CwStatus cw_element_form(const struct CwElement *m, struct CwForm **out);

/**
 * Runs a named operation (`reduce`, `spine`, `solve`, `sunburst`, ...) with
 * parameters given as a JSON object, e.g. `{"form":"1,1,-1"}`. Values may
 * be strings or numbers. `params_json` may be NULL for no parameters.
 *
 * On `CW_STATUS_OK`, `DOMAIN` and `INVALID_ARGUMENT` the response body is
 * written to `out`: the result, or `{"code":...,"message":...}`. The bytes
 * match what the CLI prints for the same request.
 */
enum CwStatus cw_request(const char *op, const char *params_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARKWORK_H */
