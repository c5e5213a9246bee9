#ifndef BDCHOQUET_H
#define BDCHOQUET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BdcStatus {
  BDC_STATUS_OK = 0,
  BDC_STATUS_NULL_POINTER = 1,
  BDC_STATUS_INVALID_UTF8 = 2,
  /**
   * Unknown descriptor or malformed arguments.
   */
  BDC_STATUS_INVALID_DESCRIPTOR = 3,
  /**
   * Parameters outside the domain of the operation.
   */
  BDC_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The computation itself failed (zero denominator, non-convergence, ...).
   */
  BDC_STATUS_COMPUTATION_FAILED = 5,
  BDC_STATUS_PANIC = 6,
} BdcStatus;

/**
 * Opaque capacity handle.
 */
typedef struct BdcCapacity BdcCapacity;

/**
 * Opaque handle to a function on `[0, 1]`.
 */
typedef struct BdcFunction BdcFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bdc_version(void);

/**
 * Copies the last error of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t bdc_last_error_message(char *buf, size_t len);

/**
 * Builds a capacity from a descriptor such as `sin-lebesgue`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string; `out` must be writable.
 */
enum BdcStatus bdc_capacity_new(const char *descriptor, struct BdcCapacity **out);

/**
 * # Safety
 * `c` must be null or a handle from [`bdc_capacity_new`] not yet freed.
 */
void bdc_capacity_free(struct BdcCapacity *c);

/**
 * `μ([a, b])`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum BdcStatus bdc_capacity_measure_interval(const struct BdcCapacity *c,
                                             double a,
                                             double b,
                                             double *out);

/**
 * Builds a function from a descriptor such as `t^2` or `poly[1 0 2]`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string; `out` must be writable.
 */
enum BdcStatus bdc_function_new(const char *descriptor, struct BdcFunction **out);

/**
 * # Safety
 * `f` must be null or a handle from [`bdc_function_new`] not yet freed.
 */
void bdc_function_free(struct BdcFunction *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum BdcStatus bdc_function_eval(const struct BdcFunction *f, double t, double *out);

/**
 * Choquet integral of `f` over `[a, b]` by level-set quadrature.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum BdcStatus bdc_choquet_integral(const struct BdcFunction *f,
                                    const struct BdcCapacity *c,
                                    double a,
                                    double b,
                                    double *out);

/**
 * Possibility operator `D_n(f)(x)`. `cells = 0` selects the default grid.
 *
 * # Safety
 * `f` must be live; `out` must be writable.
 */
enum BdcStatus bdc_possibility_operator(const struct BdcFunction *f,
                                        uint32_t n,
                                        double x,
                                        size_t cells,
                                        double *out);

/**
 * Operator with the same capacity `μ` in every term.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum BdcStatus bdc_single_capacity_operator(const struct BdcFunction *f,
                                            const struct BdcCapacity *mu,
                                            uint32_t n,
                                            double x,
                                            size_t cells,
                                            double *out);

/**
 * Two-measure operator: ordinary `δ` coefficients, Choquet against `μ` in
 * the last term. Requires `μ ≤ δ`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum BdcStatus bdc_two_measure_operator(const struct BdcFunction *f,
                                        const struct BdcCapacity *delta,
                                        const struct BdcCapacity *mu,
                                        uint32_t n,
                                        double x,
                                        size_t cells,
                                        double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BDCHOQUET_H */
