#ifndef TRANSLAB_H
#define TRANSLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TranslabStatus {
  TRANSLAB_STATUS_OK = 0,
  TRANSLAB_STATUS_NULL_POINTER = 1,
  TRANSLAB_STATUS_INVALID_ARGUMENT = 2,
  TRANSLAB_STATUS_PRECONDITION = 3,
  TRANSLAB_STATUS_OVERFLOW = 4,
  TRANSLAB_STATUS_NUMERICAL = 5,
  TRANSLAB_STATUS_BUFFER_TOO_SMALL = 6,
  TRANSLAB_STATUS_PANIC = 7,
} TranslabStatus;

/**
 * Outcome of a convergence run, mirroring the CSV status column.
 */
typedef enum TranslabRunStatus {
  TRANSLAB_RUN_STATUS_CONVERGED = 0,
  TRANSLAB_RUN_STATUS_NO_CONVERGENCE = 1,
  TRANSLAB_RUN_STATUS_INCONCLUSIVE = 2,
  TRANSLAB_RUN_STATUS_OVERFLOW = 3,
} TranslabRunStatus;

/**
 * Opaque generator handle.
 */
typedef struct TranslabGenerator TranslabGenerator;

/**
 * Opaque reduction problem handle.
 */
typedef struct TranslabProblem TranslabProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next `translab_*` call on the same thread.
 */
const char *translab_last_error_message(void);

/**
 * Release a string returned by this library. Null is ignored.
 */
void translab_string_free(char *s);

/**
 * `q(t) exp(-c t^2)` with `q(t) = sum_j alpha_j t^j`.
 */
enum TranslabStatus translab_generator_poly_gaussian(const double *alpha_re,
                                                     const double *alpha_im,
                                                     size_t len,
                                                     double c,
                                                     struct TranslabGenerator **out_handle);

/**
 * Piecewise-linear generator through `(xs[i], values[i])`, zero outside.
 */
enum TranslabStatus translab_generator_tabulated(const double *xs,
                                                 const double *values_re,
                                                 const double *values_im,
                                                 size_t len,
                                                 struct TranslabGenerator **out_handle);

void translab_generator_free(struct TranslabGenerator *handle);

/**
 * `f(t - shift)`.
 */
enum TranslabStatus translab_generator_eval(const struct TranslabGenerator *handle,
                                            double shift,
                                            double t,
                                            double *out_re,
                                            double *out_im);

/**
 * `E(x) = sup_{t in [lo, hi]} |f(t - a x - b)|` at each of `len` abscissae.
 */
enum TranslabStatus translab_shift_envelope(const struct TranslabGenerator *handle,
                                            double lo,
                                            double hi,
                                            double a,
                                            double b,
                                            const double *xs,
                                            size_t len,
                                            double *out_values);

/**
 * Final reciprocal partial sum and final Blaschke deficit sums of a
 * translation set. Any of the out-pointers may be null.
 */
enum TranslabStatus translab_translation_sums(const double *values,
                                              size_t len,
                                              double *out_reciprocal,
                                              double *out_blaschke_plus,
                                              double *out_blaschke_minus);

/**
 * Classification report of an explicit translation set as JSON.
 */
enum TranslabStatus translab_classify_json(const double *values, size_t len, char **out_json);

/**
 * Residual of the truncated-SVD least-squares fit of `target` (sampled on
 * the uniform grid with `points` nodes) by the translates `lambdas`.
 */
enum TranslabStatus translab_best_approximation(const struct TranslabGenerator *handle,
                                                double lo,
                                                double hi,
                                                size_t points,
                                                const double *lambdas,
                                                size_t k,
                                                const double *target_re,
                                                const double *target_im,
                                                double cutoff,
                                                double *out_residual_sup,
                                                size_t *out_effective_rank);

/**
 * Smallest singular value of the unit-sup scaled translate dictionary.
 */
enum TranslabStatus translab_annihilator_margin(const struct TranslabGenerator *handle,
                                                double lo,
                                                double hi,
                                                size_t points,
                                                const double *lambdas,
                                                size_t k,
                                                double *out_margin);

/**
 * Reduction problem for `F = sum_k d_k f(. - a k - b)`, `k = m0, ..., m0 + len - 1`.
 * The generator is copied; the handle can be freed afterwards.
 */
enum TranslabStatus translab_problem_new(const struct TranslabGenerator *generator,
                                         double a,
                                         double b,
                                         int64_t m0,
                                         const double *d_re,
                                         const double *d_im,
                                         size_t len,
                                         struct TranslabProblem **out_handle);

void translab_problem_free(struct TranslabProblem *handle);

/**
 * Run the reduction for `ell = 1..=ell_max` on a uniform grid. `out_err`
 * must hold `ell_max` doubles; `*out_rows` receives how many were filled
 * (fewer than `ell_max` after an overflow).
 */
enum TranslabStatus translab_convergence_run(const struct TranslabProblem *handle,
                                             double lo,
                                             double hi,
                                             size_t points,
                                             size_t ell_max,
                                             double *out_err,
                                             size_t *out_rows,
                                             enum TranslabRunStatus *out_status);

/**
 * Same run as [`translab_convergence_run`], returned as CSV text.
 */
enum TranslabStatus translab_convergence_csv(const struct TranslabProblem *handle,
                                             double lo,
                                             double hi,
                                             size_t points,
                                             size_t ell_max,
                                             char **out_csv);

/**
 * Canonical text of the exact recursion polynomials for levels `1..=ell`,
 * one `p[l,j] = ...` line each.
 */
enum TranslabStatus translab_polys_text(size_t n, size_t ell, char **out_text);

/**
 * Copy a NUL-terminated string into `buf` of `cap` bytes, including the
 * terminator. `*out_needed` always receives the required size.
 */
enum TranslabStatus translab_copy_string(const char *s, char *buf, size_t cap, size_t *out_needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRANSLAB_H */
