#ifndef CYCLO_H
#define CYCLO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the `cyclo` exit codes where
 * both exist.
 */
typedef enum CycloStatus {
  CYCLO_STATUS_OK = 0,
  CYCLO_STATUS_INVALID_INPUT = 2,
  CYCLO_STATUS_CAP_EXCEEDED = 3,
  CYCLO_STATUS_SEARCH_EXHAUSTED = 4,
  CYCLO_STATUS_INTERNAL = 5,
  CYCLO_STATUS_NULL_POINTER = 6,
  CYCLO_STATUS_BUFFER_TOO_SMALL = 7,
  CYCLO_STATUS_PANIC = 8,
} CycloStatus;

/**
 * Precomputed state for coefficients of Φ_pqr.
 */
typedef struct CycloKaplan CycloKaplan;

/**
 * A dense integer polynomial.
 */
typedef struct CycloPoly CycloPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status value. Takes a plain
 * integer so that any value coming from C is safe to pass.
 */
const char *cyclo_status_message(int32_t status);

/**
 * Deterministic primality for any 64-bit integer.
 */
bool cyclo_is_prime(uint64_t n);

/**
 * Coefficient of xᵐ in Φ_pq for odd primes p < q and 0 ≤ m < pq.
 */
enum CycloStatus cyclo_binary_coeff(uint64_t p, uint64_t q, uint64_t m, int8_t *out);

/**
 * Frobenius number of the semigroup generated by `gens[0..len]`.
 * `CYCLO_STATUS_INVALID_INPUT` when the generators have a common factor.
 */
enum CycloStatus cyclo_semigroup_frobenius(const uint64_t *gens, size_t len, int64_t *out);

/**
 * Builds a context for Φ_pqr, odd primes p < q < r.
 */
enum CycloStatus cyclo_kaplan_new(uint64_t p, uint64_t q, uint64_t r, struct CycloKaplan **out);

void cyclo_kaplan_free(struct CycloKaplan *handle);

/**
 * Degree φ(pqr) of the context's polynomial.
 */
enum CycloStatus cyclo_kaplan_degree(const struct CycloKaplan *handle, uint64_t *out);

/**
 * a_pqr(k); zero for k past the degree.
 */
enum CycloStatus cyclo_kaplan_coeff(const struct CycloKaplan *handle, uint64_t k, int64_t *out);

/**
 * a_pqr(lo), …, a_pqr(hi) into `buf`, which must hold hi − lo + 1 values.
 */
enum CycloStatus cyclo_kaplan_range(const struct CycloKaplan *handle,
                                    uint64_t lo,
                                    uint64_t hi,
                                    int64_t *buf,
                                    size_t len);

/**
 * Φₙ, refusing degrees above `cap`.
 */
enum CycloStatus cyclo_poly_cyclotomic(uint64_t n, uint64_t cap, struct CycloPoly **out);

/**
 * Ψₙ = (xⁿ − 1)/Φₙ, refusing degrees above `cap`.
 */
enum CycloStatus cyclo_poly_inverse(uint64_t n, uint64_t cap, struct CycloPoly **out);

void cyclo_poly_free(struct CycloPoly *handle);

/**
 * Number of stored coefficients (degree + 1).
 */
enum CycloStatus cyclo_poly_len(const struct CycloPoly *handle, size_t *out);

/**
 * Copies all coefficients, constant term first.
 */
enum CycloStatus cyclo_poly_coeffs(const struct CycloPoly *handle, int64_t *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLO_H */
