#ifndef MAGICBCH_H
#define MAGICBCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

enum MbStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MB_STATUS_OK = 0,
  MB_STATUS_INVALID_ARGUMENT = 1,
  MB_STATUS_SHAPE = 2,
  MB_STATUS_DOMAIN = 3,
  /**
   * Composition or logarithm hit the antipodal point.
   */
  MB_STATUS_ANTIPODAL = 4,
  MB_STATUS_CONVERGENCE = 5,
  MB_STATUS_INTERNAL = 6,
  MB_STATUS_NULL_POINTER = 7,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MbStatus MbStatus;
#else
typedef int32_t MbStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum MbBranchMode
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MB_BRANCH_MODE_PAPER = 0,
  MB_BRANCH_MODE_CORRECTED = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MbBranchMode MbBranchMode;
#else
typedef int32_t MbBranchMode;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

enum MbChannel
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MB_CHANNEL_SELF_DUAL = 0,
  MB_CHANNEL_ANTI_SELF_DUAL = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MbChannel MbChannel;
#else
typedef int32_t MbChannel;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque result of an SO(4) composition.
 */
typedef struct MbBchSo4 MbBchSo4;

typedef struct MbVec3 {
  double x1;
  double x2;
  double x3;
} MbVec3;

typedef struct MbComplex {
  double re;
  double im;
} MbComplex;

/**
 * Row-major 2×2 complex matrix.
 */
typedef struct MbMat2c {
  struct MbComplex m[4];
} MbMat2c;

typedef struct MbBchCoefficients {
  double alpha;
  double beta;
  double gamma;
  double rho;
  double theta;
} MbBchCoefficients;

/**
 * Upper-triangle entries of an antisymmetric 4×4 matrix.
 */
typedef struct MbSo4Coeffs {
  double f12;
  double f13;
  double f14;
  double f23;
  double f24;
  double f34;
} MbSo4Coeffs;

/**
 * Row-major 4×4 real matrix.
 */
typedef struct MbMat4 {
  double m[16];
} MbMat4;

typedef struct MbSplit {
  struct MbVec3 self_dual;
  struct MbVec3 anti_self_dual;
} MbSplit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of an [`MbStatus`] value. Never null.
 */
const char *mb_status_message(int32_t status);

/**
 * Detail of the last failure on this thread, or "" after a success.
 * Valid until the next `mb_*` call on the same thread.
 */
const char *mb_last_error_message(void);

/**
 * `exp(i v·σ)`.
 *
 * # Safety
 * `v` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_su2_exp(const struct MbVec3 *v, struct MbMat2c *out);

/**
 * Principal logarithm of an SU(2) matrix.
 *
 * # Safety
 * `u` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_su2_log(const struct MbMat2c *u, struct MbVec3 *out);

/**
 * `z` with `exp(i x·σ) exp(i y·σ) = exp(i z·σ)`. `coeffs` may be null.
 *
 * # Safety
 * Non-null pointers must be valid for reads/writes.
 */
MbStatus mb_bch_su2(const struct MbVec3 *x,
                    const struct MbVec3 *y,
                    int32_t mode,
                    struct MbVec3 *out,
                    struct MbBchCoefficients *coeffs);

/**
 * Rotation `exp(A)` of the antisymmetric matrix with coefficients `a`.
 *
 * # Safety
 * `a` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_so4_exp(const struct MbSo4Coeffs *a, struct MbMat4 *out);

/**
 * Logarithm of a rotation in SO(4).
 *
 * # Safety
 * `o` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_so4_log(const struct MbMat4 *o, struct MbSo4Coeffs *out);

/**
 * Self-dual and anti-self-dual parts of `a`.
 *
 * # Safety
 * `a` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_split(const struct MbSo4Coeffs *a, struct MbSplit *out);

/**
 * Inverse of [`mb_split`].
 *
 * # Safety
 * `s` and `out` must be null or valid for reads/writes.
 */
MbStatus mb_merge(const struct MbSplit *s, struct MbSo4Coeffs *out);

/**
 * SO(4) composition through the six expanded entry formulas.
 *
 * # Safety
 * Pointers must be null or valid for reads/writes.
 */
MbStatus mb_bch_so4_entries(const struct MbSo4Coeffs *f,
                            const struct MbSo4Coeffs *g,
                            int32_t mode,
                            struct MbSo4Coeffs *out);

/**
 * Composes `a` and `b` and stores a new handle in `*out`. Release it with
 * [`mb_bch_so4_free`].
 *
 * # Safety
 * Pointers must be null or valid for reads/writes.
 */
MbStatus mb_bch_so4_new(const struct MbSo4Coeffs *a,
                        const struct MbSo4Coeffs *b,
                        int32_t mode,
                        struct MbBchSo4 **out);

/**
 * Composed generator held by `h`.
 *
 * # Safety
 * `h` must come from [`mb_bch_so4_new`] and not be freed; `out` must be
 * null or writable.
 */
MbStatus mb_bch_so4_result(const struct MbBchSo4 *h, struct MbSo4Coeffs *out);

/**
 * Per-channel coefficients held by `h`; `channel` is an [`MbChannel`].
 *
 * # Safety
 * As for [`mb_bch_so4_result`].
 */
MbStatus mb_bch_so4_channel(const struct MbBchSo4 *h,
                            int32_t channel,
                            struct MbBchCoefficients *out);

/**
 * Writes 1 to `*out` if both channels lie inside the exact domain of the
 * mode used, else 0.
 *
 * # Safety
 * As for [`mb_bch_so4_result`].
 */
MbStatus mb_bch_so4_within_branch(const struct MbBchSo4 *h, int32_t *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must be null or come from [`mb_bch_so4_new`], and is freed once.
 */
void mb_bch_so4_free(struct MbBchSo4 *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAGICBCH_H */
