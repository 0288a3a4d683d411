#ifndef SINEGAP_H
#define SINEGAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SG_B_MODE_UNIT = 0,
  SG_B_MODE_KAPPA_UP = 1,
  SG_B_MODE_OMIT = 2,
} SgBMode;

typedef enum {
  SG_PRECISION_BASELINE = 0,
  SG_PRECISION_EXTENDED = 1,
} SgPrecision;

typedef enum {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_DOMAIN = 2,
  SG_STATUS_REGIME = 3,
  SG_STATUS_PRECISION_CEILING = 4,
  SG_STATUS_CONVERGENCE = 5,
  SG_STATUS_INVALID_CONFIG = 6,
  SG_STATUS_BACKEND_UNAVAILABLE = 7,
  SG_STATUS_PANIC = 8,
} SgStatus;

/**
 * Evaluation settings. Opaque to C.
 */
typedef struct SgContext SgContext;

/**
 * A value of `ln D` with its error estimate.
 */
typedef struct {
  double ln_d;
  double err_est;
  /**
   * Discretization order for numeric results, 0 otherwise.
   */
  size_t order;
} SgResult;

typedef struct {
  double p_hat;
  double std_err;
  size_t samples;
} SgMcEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A context with default settings: baseline precision, tolerance 1e-10,
 * `B` omitted in the elliptic formula.
 */
SgContext *sg_context_new(void);

/**
 * # Safety
 * `ctx` must come from [`sg_context_new`] and not have been freed; null is
 * ignored.
 */
void sg_context_free(SgContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context.
 */
SgStatus sg_context_set_tolerance(SgContext *ctx, double tol);

/**
 * # Safety
 * `ctx` must be a live context.
 */
SgStatus sg_context_set_precision(SgContext *ctx, SgPrecision precision);

/**
 * # Safety
 * `ctx` must be a live context.
 */
SgStatus sg_context_set_unsafe_envelope(SgContext *ctx, bool enabled);

/**
 * # Safety
 * `ctx` must be a live context.
 */
SgStatus sg_context_set_b_mode(SgContext *ctx, SgBMode mode);

/**
 * Numerical `ln D(s, γ)`.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
SgStatus sg_log_det(const SgContext *ctx, double s, double gamma, SgResult *out);

/**
 * Numerical `ln D` with `γ = 1 − e^{−2v}`; accurate when `γ` is close to one.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
SgStatus sg_log_det_v(const SgContext *ctx, double s, double v, SgResult *out);

/**
 * Gap probability of the thinned process at unit mean spacing, `ln D(s/γ, γ)`.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
SgStatus sg_thinned_log_det(const SgContext *ctx, double s, double gamma, SgResult *out);

/**
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_asymptotic_gaussian(double s, SgResult *out);

/**
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_asymptotic_fixed_v(double s, double v, SgResult *out);

/**
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_asymptotic_ladder(double s, double v, SgResult *out);

/**
 * Elliptic-regime formula, with `B` treated as set on the context.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
SgStatus sg_asymptotic_elliptic(const SgContext *ctx, double s, double v, SgResult *out);

/**
 * Monte Carlo estimate of the thinned GUE bulk gap probability.
 *
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_mc_estimate(size_t matrix_size,
                        size_t sample_count,
                        uint64_t seed,
                        double s,
                        double gamma,
                        SgMcEstimate *out);

/**
 * `ln c₀ = (1/12) ln 2 + 3ζ′(−1)`.
 */
double sg_widom_dyson_ln_c0(void);

/**
 * Message for the last failure on this thread, or null if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sg_last_error_message(void);

/**
 * Static, NUL-terminated name of a status code.
 */
const char *sg_status_name(SgStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINEGAP_H */
