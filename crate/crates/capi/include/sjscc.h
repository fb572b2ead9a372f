/* C interface to the sjscc library. Generated by cbindgen; do not edit. */

#ifndef SJSCC_H
#define SJSCC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every API call.
 */
typedef enum SjsccStatus {
  SJSCC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SJSCC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A power or variance that must be positive was not.
   */
  SJSCC_STATUS_NON_POSITIVE_PARAM = 2,
  /**
   * The eavesdropper channel must be strictly noisier than the main one.
   */
  SJSCC_STATUS_DEGRADEDNESS_VIOLATION = 3,
  /**
   * A covariance system was numerically singular.
   */
  SJSCC_STATUS_SINGULAR_COVARIANCE = 4,
  /**
   * Interference power is zero; the regime machinery is degenerate.
   */
  SJSCC_STATUS_ZERO_INTERFERENCE = 5,
  /**
   * A quantization rate exceeded its admissible maximum.
   */
  SJSCC_STATUS_RATE_TOO_HIGH = 6,
  /**
   * The closed-form optimum fell outside the feasible region.
   */
  SJSCC_STATUS_INFEASIBLE_OPTIMUM = 7,
  /**
   * The admissible embedding-gain interval is empty.
   */
  SJSCC_STATUS_EMPTY_INTERVAL = 8,
  /**
   * Simulation of an infeasible point without the force flag.
   */
  SJSCC_STATUS_INFEASIBLE_WITHOUT_OVERRIDE = 9,
  /**
   * Malformed configuration input.
   */
  SJSCC_STATUS_INVALID_INPUT = 10,
} SjsccStatus;

/**
 * Power regime of the piecewise secrecy rate.
 */
typedef enum SjsccRegime {
  SJSCC_REGIME_LOW_POWER = 0,
  SJSCC_REGIME_MID_POWER = 1,
  SJSCC_REGIME_HIGH_POWER = 2,
  /**
   * Q = 0: the rate degenerates to the plain wiretap-channel expression;
   * threshold and crossing fields are NaN.
   */
  SJSCC_REGIME_ZERO_INTERFERENCE = 3,
} SjsccRegime;

/**
 * Scheme selector for mismatch analysis.
 */
typedef enum SjsccMismatchScheme {
  SJSCC_MISMATCH_SCHEME_SEPARATION = 0,
  SJSCC_MISMATCH_SCHEME_HDA1 = 1,
  SJSCC_MISMATCH_SCHEME_HDA1_MODIFIED = 2,
  /**
   * Uses the `rate` argument.
   */
  SJSCC_MISMATCH_SCHEME_HDA2 = 3,
  /**
   * Uses the `rate` argument.
   */
  SJSCC_MISMATCH_SCHEME_HDA3 = 4,
} SjsccMismatchScheme;

/**
 * Opaque handle to a validated parameter set.
 */
typedef struct SjsccParams SjsccParams;

/**
 * Regime classification result.
 */
typedef struct SjsccRegimeReport {
  enum SjsccRegime regime;
  double p_low;
  double p_high;
  double alpha_star;
  double alpha_zero;
  /**
   * Achievable secrecy rate, bits per channel use.
   */
  double secrecy_rate_bits;
} SjsccRegimeReport;

/**
 * Monte Carlo verification result.
 */
typedef struct SjsccSimReport {
  double empirical_d;
  double closed_form_d;
  double standard_error;
  double z_score;
  bool constraints_ok;
} SjsccSimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *sjscc_status_message(enum SjsccStatus status);

/**
 * Creates and validates a parameter set. On success writes a handle that
 * must be released with `sjscc_params_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SjsccStatus sjscc_params_new(double p,
                                  double q,
                                  double n1,
                                  double n2,
                                  double sigma_v2,
                                  struct SjsccParams **out);

/**
 * Releases a handle created by `sjscc_params_new`. Null is a no-op.
 *
 * # Safety
 * `params` must be null or a pointer from `sjscc_params_new`, not yet freed.
 */
void sjscc_params_free(struct SjsccParams *params);

/**
 * Classifies the power regime and evaluates the achievable secrecy rate.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_regime(const struct SjsccParams *params, struct SjsccRegimeReport *out);

/**
 * Minimum achievable distortion `sigma_v2 * N1 / (P + N1)`.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_optimal_distortion(const struct SjsccParams *params, double *out);

/**
 * Distortion of the separation-based scheme.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_separation_distortion(const struct SjsccParams *params, double *out);

/**
 * Distortion-optimal embedding pair of the direct scheme.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; out-pointers must be valid.
 */
enum SjsccStatus sjscc_scheme1_optimal(const struct SjsccParams *params,
                                       double *out_alpha,
                                       double *out_k);

/**
 * Distortion of the direct-embedding scheme at `(alpha, k)`, with the
 * feasibility verdict and the two constraint margins.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; out-pointers must be valid.
 */
enum SjsccStatus sjscc_scheme1_distortion(const struct SjsccParams *params,
                                          double alpha,
                                          double k,
                                          double *out_distortion,
                                          bool *out_feasible,
                                          double *out_lower_margin,
                                          double *out_upper_margin);

/**
 * Distortion of the superposition scheme at digital rate `rate`.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_scheme2_distortion(const struct SjsccParams *params,
                                          double rate,
                                          double *out);

/**
 * Distortion of the superimposed scheme at quantization rate `rate`, using
 * the distortion-optimal embedding for that rate. Also reports the chosen
 * pair and whether the rate fits the binning window.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; out-pointers must be valid.
 */
enum SjsccStatus sjscc_scheme3_distortion(const struct SjsccParams *params,
                                          double rate,
                                          double *out_distortion,
                                          double *out_alpha,
                                          double *out_k,
                                          bool *out_rate_admissible);

/**
 * Actual distortion of a scheme designed for noise `n_design` when the
 * channel realizes `n1_actual`. `rate` is ignored unless the scheme is
 * HDA2 or HDA3.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_mismatch_distortion(const struct SjsccParams *params,
                                           enum SjsccMismatchScheme scheme,
                                           double n_design,
                                           double n1_actual,
                                           double rate,
                                           double *out);

/**
 * Least-squares distortion decay exponent over `[lo_db, hi_db]`.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; out-pointers must be valid.
 */
enum SjsccStatus sjscc_distortion_exponent(const struct SjsccParams *params,
                                           enum SjsccMismatchScheme scheme,
                                           double n_design,
                                           double lo_db,
                                           double hi_db,
                                           uintptr_t n_points,
                                           double rate,
                                           double *out_zeta,
                                           double *out_residual);

/**
 * Seeded Monte Carlo run of the direct-embedding scheme at `(alpha, k)`.
 * Identical seeds give bit-identical reports.
 *
 * # Safety
 * `params` must come from `sjscc_params_new`; `out` must be valid.
 */
enum SjsccStatus sjscc_simulate_scheme1(const struct SjsccParams *params,
                                        double alpha,
                                        double k,
                                        uint64_t n_samples,
                                        uint64_t seed,
                                        bool force,
                                        struct SjsccSimReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SJSCC_H */
