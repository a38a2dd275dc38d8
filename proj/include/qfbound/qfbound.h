/*
 * C interface to the quadratic-form concentration bounds library.
 *
 * Every function returns a qfb_status; outputs go through pointer arguments.
 * On failure, qfb_last_error() returns a message for the calling thread that
 * stays valid until the next failing call on that thread.
 */
#ifndef QFBOUND_H
#define QFBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QFBOUND_BUILDING)
#    define QFB_API __declspec(dllexport)
#  else
#    define QFB_API __declspec(dllimport)
#  endif
#else
#  define QFB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfb_status {
    QFB_OK = 0,
    QFB_ERR_INVALID_ARGUMENT = 1, /* validation failure, null pointer, bad size */
    QFB_ERR_DEGENERATE = 2,       /* deterministic form (a = b = 0) */
    QFB_ERR_DOMAIN = 3,           /* evaluation outside the MGF domain */
    QFB_ERR_NUMERICAL = 4,        /* eigensolver or quadrature did not converge */
    QFB_ERR_INTERNAL = 5          /* allocation failure or unexpected exception */
} qfb_status;

typedef enum qfb_direction { QFB_UPPER = 0, QFB_LOWER = 1 } qfb_direction;

/* A diagonal form T = sum a_k z_k^2 + b_k z_k. Forms built from a matrix hold
 * the spectral reduction (eigenvalues, rotated b) plus the orthonormal basis. */
typedef struct qfb_form qfb_form;

typedef struct qfb_stats {
    double mean;
    double u_sq;
    double a_plus;
    double a_minus;
} qfb_stats;

typedef struct qfb_tail_bound {
    qfb_direction direction;
    double x;
    double threshold;
    double prob_bound;
} qfb_tail_bound;

typedef struct qfb_tail_estimate {
    double p_hat;
    double ci_low;
    double ci_high;
    uint64_t exceedances;
    uint64_t n;
    uint64_t seed;
    double confidence;
} qfb_tail_estimate;

typedef struct qfb_envelope_check {
    size_t grid_size;
    double y_max;
    double max_excess;
    double worst_y;
    double min_rhs_ratio;
    size_t violations;
    size_t first_violation; /* grid index; equals grid_size when none */
} qfb_envelope_check;

QFB_API const char* qfb_version(void);
QFB_API const char* qfb_last_error(void);

/* Forms ------------------------------------------------------------------ */

QFB_API qfb_status qfb_form_create_diagonal(const double* a, const double* b, size_t p, qfb_form** out);
/* `matrix` is p*p doubles, row major; it need not be symmetric. */
QFB_API qfb_status qfb_form_create_matrix(const double* matrix, const double* b, size_t p, qfb_form** out);
QFB_API void qfb_form_destroy(qfb_form* form);

QFB_API size_t qfb_form_dimension(const qfb_form* form);
QFB_API int qfb_form_is_reduced(const qfb_form* form);
QFB_API int qfb_form_is_deterministic(const qfb_form* form);
/* Copies the diagonal coefficients (eigenvalues and U^T b for matrix forms). */
QFB_API qfb_status qfb_form_coefficients(const qfb_form* form, double* a, double* b);
/* Copies the p*p row-major eigenbasis U; QFB_ERR_INVALID_ARGUMENT for diagonal forms. */
QFB_API qfb_status qfb_form_basis(const qfb_form* form, double* basis);
QFB_API qfb_status qfb_form_stats(const qfb_form* form, qfb_stats* out);

/* Bounds ----------------------------------------------------------------- */

QFB_API qfb_status qfb_threshold(const qfb_stats* stats, double x, qfb_direction direction, qfb_tail_bound* out);
QFB_API qfb_status qfb_tail_exponent(const qfb_stats* stats, double deviation, qfb_direction direction,
                                     qfb_tail_bound* out);
QFB_API qfb_status qfb_envelope_threshold(double u, double v, double x, double* out);
/* out must hold `count` bounds. */
QFB_API qfb_status qfb_union_threshold(const qfb_stats* stats, size_t count, double x, qfb_direction direction,
                                       qfb_tail_bound* out);

/* MGF -------------------------------------------------------------------- */

QFB_API qfb_status qfb_log_mgf_centered(const qfb_form* form, double y, double* out);
QFB_API qfb_status qfb_envelope_rhs(const qfb_stats* stats, double y, double* out);
QFB_API qfb_status qfb_check_envelope(const qfb_form* form, size_t grid_size, qfb_envelope_check* out);

/* Oracle ----------------------------------------------------------------- */

/* out must hold n doubles. chunk_size 0 selects the default (65536). */
QFB_API qfb_status qfb_sample(const qfb_form* form, size_t n, uint64_t seed, size_t chunk_size, double* out);
/* One sample set of size n, one estimate per threshold; out must hold `count` estimates. */
QFB_API qfb_status qfb_estimate_tails(const qfb_form* form, const double* thresholds, size_t count,
                                      qfb_direction direction, size_t n, uint64_t seed, double confidence,
                                      qfb_tail_estimate* out);
QFB_API qfb_status qfb_cdf(const qfb_form* form, double t, double* out);
QFB_API qfb_status qfb_cdf_p1(double a, double b, double t, double* out);

#ifdef __cplusplus
}
#endif

#endif /* QFBOUND_H */
