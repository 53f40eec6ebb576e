#ifndef BJORTHO_H
#define BJORTHO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

/*
 Operator norm selector.
 */
typedef enum BjNorm {
  BJ_NORM_ONE = 1,
  BJ_NORM_TWO = 2,
  BJ_NORM_INF = 3,
} BjNorm;

/*
 Result code of every fallible call.
 */
typedef enum BjStatus {
  BJ_STATUS_OK = 0,
  BJ_STATUS_NULL_POINTER = 1,
  /*
   Rejected input: bad shape, non-finite entry, unmet precondition.
   */
  BJ_STATUS_INVALID_INPUT = 2,
  /*
   Non-convergence or a non-finite intermediate value.
   */
  BJ_STATUS_NUMERICAL = 3,
  BJ_STATUS_PANIC = 4,
} BjStatus;

/*
 Opaque dense real matrix.
 */
typedef struct BjMatrix BjMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message of this thread into `buf` (NUL-terminated,
 truncated to `len` bytes) and returns the full message length without
 the terminator; 0 when there is no error.
 */
size_t bj_last_error_message(char *buf, size_t len);

/*
 Builds a `rows × cols` matrix from `rows·cols` row-major values.
 */
enum BjStatus bj_matrix_new(size_t rows,
                            size_t cols,
                            const double *data,
                            struct BjMatrix **out_matrix);

/*
 Releases a matrix; null is ignored.
 */
void bj_matrix_free(struct BjMatrix *m);

/*
 Row count, or 0 for null.
 */
size_t bj_matrix_rows(const struct BjMatrix *m);

/*
 Column count, or 0 for null.
 */
size_t bj_matrix_cols(const struct BjMatrix *m);

/*
 Copies the entries row-major into `buf`, which holds `len` doubles.
 */
enum BjStatus bj_matrix_data(const struct BjMatrix *m, double *buf, size_t len);

/*
 Induced operator norm `‖T‖`.
 */
enum BjStatus bj_operator_norm(const struct BjMatrix *t, enum BjNorm norm, double *out_norm);

/*
 Spectral-norm test of `T ⊥_B A`. When orthogonal and `witness` is
 non-null, the unit witness vector (length `cols`) is written there.
 */
enum BjStatus bj_orthogonal_spectral(const struct BjMatrix *t,
                                     const struct BjMatrix *a,
                                     double tol,
                                     bool *out_orthogonal,
                                     double *witness);

/*
 Oracle test of `T ⊥_B A`: minimizes `λ ↦ ‖T + λA‖` directly. The
 minimizer and minimum are written to the optional outputs.
 */
enum BjStatus bj_orthogonal_oracle(const struct BjMatrix *t,
                                   const struct BjMatrix *a,
                                   enum BjNorm norm,
                                   double tol,
                                   bool *out_orthogonal,
                                   double *out_lambda_min,
                                   double *out_norm_min);

/*
 `x ⊥_B y` in `ℓ_p` by one-sided derivatives; pass `p = INFINITY` for
 the max norm.
 */
enum BjStatus bj_vector_orthogonal(const double *x,
                                   const double *y,
                                   size_t len,
                                   double p,
                                   double tol,
                                   bool *out_orthogonal);

/*
 Smoothness of `T` for the spectral norm with its two largest singular
 values.
 */
enum BjStatus bj_operator_smooth(const struct BjMatrix *t,
                                 double tol,
                                 bool *out_smooth,
                                 double *out_sigma1,
                                 double *out_sigma2);

/*
 The split `T = A₁ + A₂` into two operators orthogonal to `T`; requires a
 repeated top singular value. Both handles must be freed by the caller.
 */
enum BjStatus bj_nonsmooth_witness(const struct BjMatrix *t,
                                   double tol,
                                   struct BjMatrix **out_a1,
                                   struct BjMatrix **out_a2);

/*
 Oracle minimum for `diag(−1, 1/2, …, 1 − 1/n)` against the identity:
 the norm gap and the minimizing `λ`, both `1/(2n)` in exact arithmetic.
 */
enum BjStatus bj_truncated_example(size_t n, double tol, double *out_gap, double *out_lambda_star);

/*
 Library version as a static NUL-terminated string.
 */
const char *bj_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BJORTHO_H */
