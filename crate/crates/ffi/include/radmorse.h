#ifndef RADMORSE_H
#define RADMORSE_H

/* Generated by cbindgen from radmorse-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible FFI call.
typedef enum RmStatus {
  // Success.
  RM_STATUS_OK = 0,
  // A parameter was rejected before any computation.
  RM_STATUS_INVALID_ARGUMENT = 1,
  // Quadrature or factorization failed to converge.
  RM_STATUS_NUMERICAL_FAILURE = 2,
  // A required pointer was null.
  RM_STATUS_NULL_POINTER = 3,
} RmStatus;

// Opaque handle to a constructed radial solution.
typedef struct RmSolution RmSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread.
//
// The pointer stays valid until the next failing call on the same
// thread; do not free it.
const char *rm_last_error_message(void);

// kappa_N = N / (2 sqrt(N - 1)); rejects N < 3.
enum RmStatus rm_kappa(uint32_t dimension, double *out);

// c0 = int_0^inf exp(-theta(s)) ds, the transition-kernel mass.
enum RmStatus rm_normalization_constant(double *out);

// Builds the solution for dimension N in [3, 9] and r0 in [1e-3, 0.99].
//
// On success `*out` owns the handle; release it with
// [`rm_solution_free`].
enum RmStatus rm_solution_new(uint32_t dimension, double r0, struct RmSolution **out);

// Releases a handle returned by [`rm_solution_new`]. Null is a no-op.
//
// # Safety
// `sol` must be a pointer previously returned by [`rm_solution_new`]
// and not yet freed.
void rm_solution_free(struct RmSolution *sol);

// u(r) for r in [0, 1].
//
// # Safety
// `sol` must be a live handle from [`rm_solution_new`]; `out` must be
// a valid writable pointer.
enum RmStatus rm_solution_u(const struct RmSolution *sol, double r, double *out);

// u'(r) in closed form; u'(0) = 0.
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_solution_u_derivative(const struct RmSolution *sol, double r, double *out);

// f(u(r)) = N Psi'(r^N).
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_solution_f(const struct RmSolution *sol, double r, double *out);

// f'(u(r)) = -N^2 r^{2(N-1)} Psi''(r^N)/Psi(r^N).
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_solution_fprime(const struct RmSolution *sol, double r, double *out);

// Sup norm u(0).
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_solution_sup_norm(const struct RmSolution *sol, double *out);

// L^p(B_1) norm; pass INFINITY for the sup norm. `grid_n >= 256`.
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_solution_lp_norm(const struct RmSolution *sol,
                                  double p,
                                  size_t grid_n,
                                  double *out);

// Radial Morse index on (a, b) with an n / 2n refinement check.
//
// Writes the negative-eigenvalue count and whether the two grids
// agreed (1) or not (0).
//
// # Safety
// `sol` must be a live handle; both out-pointers must be writable.
enum RmStatus rm_radial_morse_index(const struct RmSolution *sol,
                                    double a,
                                    double b,
                                    size_t grid_n,
                                    size_t *count,
                                    int32_t *refinement_consistent);

// Minimum of the annulus stability quotient on (r0, 1); values at or
// above N - 1 certify stability there.
//
// # Safety
// Same contract as [`rm_solution_u`].
enum RmStatus rm_stability_quotient(const struct RmSolution *sol,
                                    double r0,
                                    size_t grid_n,
                                    double *out);

// Bubble-family point: writes sup norm, L^1 norm, their ratio, the
// boundary value, and the PDE defect for u_lambda.
//
// # Safety
// All five out-pointers must be valid writable doubles.
enum RmStatus rm_critical_family(uint32_t dimension,
                                 double lambda,
                                 size_t grid_n,
                                 double *sup_norm,
                                 double *l1_norm,
                                 double *ratio,
                                 double *boundary_value,
                                 double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADMORSE_H */
