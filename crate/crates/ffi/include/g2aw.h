#ifndef G2AW_H
#define G2AW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/* Opaque handles; constructed and released by the library. */
typedef struct g2aw_params g2aw_params;
typedef struct g2aw_report g2aw_report;


/**
 * Status codes returned by every fallible call.
 */
typedef enum g2aw_status {
  G2AW_OK = 0,
  /**
   * invalid numeric argument (zero scale, bad range)
   */
  G2AW_INVALID_ARGUMENT = 1,
  /**
   * degenerate space (k, l) = (0, 0)
   */
  G2AW_DEGENERATE = 2,
  /**
   * (k, l) must be Weyl-rotated before classification
   */
  G2AW_WEYL_REDUCIBLE = 3,
  /**
   * the multistart solver found fewer branches than expected
   */
  G2AW_NO_CONVERGENCE = 4,
  /**
   * curvature failed the basic-form check
   */
  G2AW_NON_BASIC = 5,
  G2AW_NULL_POINTER = 6,
  /**
   * internal panic caught at the boundary
   */
  G2AW_INTERNAL = 7,
} g2aw_status;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a structure handle. On success writes an owned pointer to `out`;
 * release it with [`g2aw_params_free`].
 */
enum g2aw_status g2aw_params_new(int64_t k,
                                 int64_t l,
                                 double big_a,
                                 double big_b,
                                 double big_c,
                                 double big_d,
                                 g2aw_params **out);

void g2aw_params_free(g2aw_params *p);

/**
 * Gamma and Delta of the Abelian classification.
 */
enum g2aw_status g2aw_gamma_delta(const g2aw_params *p, double *gamma, double *delta);

/**
 * The three existence discriminants, written to `out[0..3]`.
 */
enum g2aw_status g2aw_sigmas(const g2aw_params *p, double *out);

/**
 * Scalar torsion of the structure (closed form).
 */
enum g2aw_status g2aw_tau0(const g2aw_params *p, double *out);

/**
 * The four nearly-parallel equation residuals at the given lambda,
 * written to `out[0..4]`.
 */
enum g2aw_status g2aw_np_residual(const g2aw_params *p, double lambda, double *out);

/**
 * Classify invariant instantons on the degree-n bundle. `gauge_so3` of 0
 * restricts to the Abelian (reducible) classification. On success writes a
 * report handle; release it with [`g2aw_report_free`].
 */
enum g2aw_status g2aw_classify(const g2aw_params *p,
                               int64_t n,
                               int32_t gauge_so3,
                               g2aw_report **out);

/**
 * Solve the nearly-parallel system on X_{k,l}; `starts` is the multistart
 * grid density per axis (8 is the default used by the CLI).
 */
enum g2aw_status g2aw_np_solve(int64_t k,
                               int64_t l,
                               double lambda,
                               uintptr_t starts,
                               g2aw_report **out);

/**
 * Number of solutions held by a report.
 */
uintptr_t g2aw_report_solution_count(const g2aw_report *r);

/**
 * Serialize a report to JSON. The returned string is owned by the caller
 * and must be released with [`g2aw_string_free`].
 */
enum g2aw_status g2aw_report_json(const g2aw_report *r, char **out);

void g2aw_report_free(g2aw_report *r);

void g2aw_string_free(char *s);

/**
 * Residual |F ^ psi| of the Abelian connection with coefficient b on the
 * degree-n bundle — the oracle behind every classified coefficient.
 */
enum g2aw_status g2aw_abelian_residual(const g2aw_params *p, int64_t n, double b, double *out);

/**
 * Characteristic classes of the homogeneous SO(3)-bundle of degree n:
 * w2 in Z_2 and p1 in Z_{k^2+kl+l^2}.
 */
enum g2aw_status g2aw_char_classes(int64_t k,
                                   int64_t l,
                                   int64_t n,
                                   uint8_t *w2,
                                   int64_t *p1,
                                   int64_t *modulus);

/**
 * The two squashed nearly-parallel roots, written as
 * (t1, lambda1, t2, lambda2) to `out[0..4]`.
 */
enum g2aw_status g2aw_squash_roots(double *out);

/**
 * Static name of a status code.
 */
const char *g2aw_status_name(enum g2aw_status status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* G2AW_H */
