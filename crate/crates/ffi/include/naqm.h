#ifndef NAQM_H
#define NAQM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum NaqmStatus {
  NAQM_STATUS_OK = 0,
  NAQM_STATUS_NULL_POINTER = 1,
  NAQM_STATUS_INVALID_INPUT = 2,
  NAQM_STATUS_DIMENSION_MISMATCH = 3,
  NAQM_STATUS_PARSE = 4,
  NAQM_STATUS_IO = 5,
  NAQM_STATUS_NOT_NORMALIZED = 6,
  NAQM_STATUS_NOT_OBSERVABLE = 7,
  NAQM_STATUS_UNSUPPORTED = 8,
  NAQM_STATUS_BUFFER_TOO_SMALL = 9,
  NAQM_STATUS_FAILED = 10,
  NAQM_STATUS_PANIC = 11,
} NaqmStatus;

/*
 Opaque algebra handle with its enveloping data and trace, if any.
 */
typedef struct NaqmAlgebra NaqmAlgebra;

/*
 A complex number with the layout of `double[2]`.
 */
typedef struct NaqmComplex {
  double re;
  double im;
} NaqmComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL after a
 successful call. Valid until the next call on the same thread.
 */
const char *naqm_last_error(void);

/*
 Creates a builtin algebra: `octonion`, `jordan:N`, `pauli`, `matrix:N` or `su2`.

 # Safety
 `name` must be a NUL-terminated string and `out` a writable handle slot.
 */
enum NaqmStatus naqm_algebra_builtin(const char *name, struct NaqmAlgebra **out);

/*
 Creates an algebra from its JSON description.

 # Safety
 `json` must be a NUL-terminated string and `out` a writable handle slot.
 */
enum NaqmStatus naqm_algebra_from_json(const char *json, struct NaqmAlgebra **out);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `alg` must be NULL or a live handle, which is invalid afterwards.
 */
void naqm_algebra_free(struct NaqmAlgebra *alg);

/*
 Writes the algebra dimension.

 # Safety
 `alg` must be a live handle and `out` writable.
 */
enum NaqmStatus naqm_algebra_dim(const struct NaqmAlgebra *alg, size_t *out);

/*
 Checks the algebra axioms at tolerance `tol` and writes the verdict.

 # Safety
 `alg` must be a live handle and `passed` writable.
 */
enum NaqmStatus naqm_algebra_check(const struct NaqmAlgebra *alg, double tol, bool *passed);

/*
 Writes the product `a b`.

 # Safety
 `a`, `b` and `out` must each hold `dim` values.
 */
enum NaqmStatus naqm_multiply(const struct NaqmAlgebra *alg,
                              const struct NaqmComplex *a,
                              const struct NaqmComplex *b,
                              struct NaqmComplex *out);

/*
 Writes the involution `a*`.

 # Safety
 `a` and `out` must each hold `dim` values.
 */
enum NaqmStatus naqm_star(const struct NaqmAlgebra *alg,
                          const struct NaqmComplex *a,
                          struct NaqmComplex *out);

/*
 Writes the canonical trace `τ(a)`.

 # Safety
 `a` must hold `dim` values and `out` be writable.
 */
enum NaqmStatus naqm_trace(const struct NaqmAlgebra *alg,
                           const struct NaqmComplex *a,
                           struct NaqmComplex *out);

/*
 Writes the dimension of the operator algebra generated by the left
 multiplications, or by left and right multiplications when `both` is set.

 # Safety
 `alg` must be a live handle and `out` writable.
 */
enum NaqmStatus naqm_enveloping_dim(const struct NaqmAlgebra *alg, bool both, size_t *out);

/*
 Rescales `psi` in place to unit norm `τ(ψ* ψ) = 1`.

 # Safety
 `psi` must hold `dim` values.
 */
enum NaqmStatus naqm_normalize(const struct NaqmAlgebra *alg, struct NaqmComplex *psi);

/*
 Writes the expectation `τ(ψ* (X ψ))` of the operator word `word_json`
 in the normalized vector `psi`.

 # Safety
 `word_json` must be a NUL-terminated string, `psi` hold `dim` values and
 `out` be writable.
 */
enum NaqmStatus naqm_expectation(const struct NaqmAlgebra *alg,
                                 const char *word_json,
                                 const struct NaqmComplex *psi,
                                 struct NaqmComplex *out);

/*
 Writes the uncertainty of the observable `word_json` in the normalized
 vector `psi`.

 # Safety
 `word_json` must be a NUL-terminated string, `psi` hold `dim` values and
 `out` be writable.
 */
enum NaqmStatus naqm_uncertainty(const struct NaqmAlgebra *alg,
                                 const char *word_json,
                                 const struct NaqmComplex *psi,
                                 double *out);

/*
 Writes the eigenvalues of the operator word into `values`, sorted by
 descending real part. `capacity` is the length of `values`; `count`
 receives the number of eigenvalues, which equals `dim`.

 # Safety
 `word_json` must be a NUL-terminated string, `values` hold `capacity`
 writable values and `count` be writable.
 */
enum NaqmStatus naqm_eigenvalues(const struct NaqmAlgebra *alg,
                                 const char *word_json,
                                 struct NaqmComplex *values,
                                 size_t capacity,
                                 size_t *count);

/*
 Evolves `psi` in place under `i ħ dψ/dt = H ψ` for time `t`, where `H`
 is the observable word `hamiltonian_json`.

 # Safety
 `hamiltonian_json` must be a NUL-terminated string and `psi` hold `dim`
 values.
 */
enum NaqmStatus naqm_evolve(const struct NaqmAlgebra *alg,
                            const char *hamiltonian_json,
                            double hbar,
                            double t,
                            struct NaqmComplex *psi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NAQM_H */
