#ifndef RPQ_H
#define RPQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum RpqStatus {
  RPQ_STATUS_OK = 0,
  RPQ_STATUS_NULL_POINTER = 1,
  RPQ_STATUS_INVALID_ARGUMENT = 2,
  RPQ_STATUS_PARSE = 3,
  RPQ_STATUS_DOMAIN = 4,
  RPQ_STATUS_POLE = 5,
  RPQ_STATUS_NO_CONVERGENCE = 6,
  RPQ_STATUS_NOT_EXACT = 7,
  RPQ_STATUS_PANIC = 8,
} RpqStatus;

// A p-adic number with its prime and relative precision.
typedef struct RpqPadic RpqPadic;

// Deformation parameters: structure function, `p`, `q` and twist bases.
typedef struct RpqParams RpqParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread, or null.
// The pointer stays valid until the next call on the same thread.
const char *rpq_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void rpq_string_free(char *s);

// Creates parameters for a preset (`heine`, `quesne`, `bm`, `js`, `cj`, `hn`
// or the full names) with rationals `p` and `q` written as `"a/b"`.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum RpqStatus rpq_params_new(const char *preset,
                              const char *p,
                              const char *q,
                              struct RpqParams **out);

// Replaces the twist bases `ξ1, ξ2`.
//
// # Safety
// `params` must be a live handle; strings must be NUL-terminated.
enum RpqStatus rpq_params_set_twist(struct RpqParams *params, const char *xi1, const char *xi2);

// # Safety
// `params` must be null or a live handle, freed at most once.
void rpq_params_free(struct RpqParams *params);

// `[n]` as a reduced fraction string; negative `n` is allowed.
//
// # Safety
// `params` must be a live handle; `out` must be writable.
enum RpqStatus rpq_number(const struct RpqParams *params, int64_t n, char **out);

// `[n]!` for `n >= 0`.
//
// # Safety
// As for [`rpq_number`].
enum RpqStatus rpq_factorial(const struct RpqParams *params, int64_t n, char **out);

// `[m]!/([n]![m-n]!)` for `0 <= n <= m`.
//
// # Safety
// As for [`rpq_number`].
enum RpqStatus rpq_binomial(const struct RpqParams *params, int64_t m, int64_t n, char **out);

// Gamma function at rational `z`; `exact` receives 1 when the value is
// exact and 0 when it comes from the certified product.
//
// # Safety
// `params` must be a live handle; `z` NUL-terminated; `out` and `exact` writable.
enum RpqStatus rpq_gamma(const struct RpqParams *params, const char *z, char **out, int32_t *exact);

// Local spin zeta value at prime `p` and integer `s`, as a fraction string.
//
// # Safety
// `out` must be writable.
enum RpqStatus rpq_zeta_spin(uint64_t p, int64_t s, char **out);

// Embeds a rational into `Q_p` with `precision` digits.
//
// # Safety
// `value` must be NUL-terminated; `out` writable.
enum RpqStatus rpq_padic_new(const char *value,
                             uint64_t prime,
                             uint32_t precision,
                             struct RpqPadic **out);

// # Safety
// `x` must be null or a live handle, freed at most once.
void rpq_padic_free(struct RpqPadic *x);

// # Safety
// Handles must be live; `out` writable.
enum RpqStatus rpq_padic_add(const struct RpqPadic *a,
                             const struct RpqPadic *b,
                             struct RpqPadic **out);

// # Safety
// Handles must be live; `out` writable.
enum RpqStatus rpq_padic_mul(const struct RpqPadic *a,
                             const struct RpqPadic *b,
                             struct RpqPadic **out);

// Valuation of `x`; `is_zero` receives 1 (and `valuation` is untouched) for zero.
//
// # Safety
// `x` must be live; `valuation` and `is_zero` writable.
enum RpqStatus rpq_padic_valuation(const struct RpqPadic *x, int64_t *valuation, int32_t *is_zero);

// Digit expansion `p^v * (d0 + d1*p + ...)`.
//
// # Safety
// `x` must be live; `out` writable.
enum RpqStatus rpq_padic_to_string(const struct RpqPadic *x, char **out);

// The rational `p^v * u` with `0 <= u < p^precision`, as a fraction string.
//
// # Safety
// `x` must be live; `out` writable.
enum RpqStatus rpq_padic_to_rational(const struct RpqPadic *x, char **out);

// 1 when `a` and `b` agree to their joint precision.
//
// # Safety
// Handles must be live; `equal` writable.
enum RpqStatus rpq_padic_eq(const struct RpqPadic *a, const struct RpqPadic *b, int32_t *equal);

// p-adic gamma at integer `n`. Null `rho` and `q` select the classical
// (Morita) function; otherwise both are rationals `"a/b"`.
//
// # Safety
// `rho` and `q` must be null or NUL-terminated; `out` writable.
enum RpqStatus rpq_padic_gamma(int64_t n,
                               uint64_t prime,
                               uint32_t precision,
                               const char *rho,
                               const char *q,
                               struct RpqPadic **out);

// Runs a check suite (`deform`, `series`, `quadrature`, `gammabeta`,
// `padicfun`, `spinzeta`, or `all`). `passed` receives 1 when every asserted
// identity holds; `report` (optional) receives the JSON report.
//
// # Safety
// `module` must be NUL-terminated; `passed` writable; `report` null or writable.
enum RpqStatus rpq_check(const char *module, int32_t *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RPQ_H */
