/* C interface for the etaq partition-congruence library.
 *
 * Hand-maintained to match crates/ffi/src/lib.rs; keep the two in sync.
 *
 * Conventions:
 *  - Series live behind the opaque handle EtaqSeries; create with
 *    etaq_series_ar / etaq_series_c, destroy with etaq_series_free.
 *  - Every fallible call returns an EtaqStatus and writes results through
 *    out-pointers; ETAQ_OK (0) means the out-values are valid.
 *  - Strings returned by the library are NUL-terminated UTF-8 and must be
 *    released with etaq_string_free.
 *  - Handles are immutable after construction; sharing one across threads
 *    for reads is safe.
 */

#ifndef ETAQ_H
#define ETAQ_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum EtaqStatus {
  ETAQ_OK = 0,
  ETAQ_NULL_POINTER = 1,
  ETAQ_INVALID_ARGUMENT = 2,
  ETAQ_COMPUTE_ERROR = 3,
  ETAQ_OUT_OF_RANGE = 4,
  ETAQ_BAD_JSON = 5,
} EtaqStatus;

/* Opaque truncated-series handle. */
typedef struct EtaqSeries EtaqSeries;

/* Series of a_r(n) for 0 <= n <= trunc; modulus 0 means exact integers. */
EtaqStatus etaq_series_ar(uint32_t r, size_t trunc, uint64_t modulus,
                          EtaqSeries **out);

/* Series of c(n) (coefficients of f1 f2^2) for 0 <= n <= trunc. */
EtaqStatus etaq_series_c(size_t trunc, uint64_t modulus, EtaqSeries **out);

/* Highest valid coefficient index of a series handle. */
EtaqStatus etaq_series_trunc(const EtaqSeries *handle, size_t *out);

/* Residue of coefficient n for a modular series; ETAQ_INVALID_ARGUMENT on
 * exact series (use etaq_series_coeff_string). */
EtaqStatus etaq_series_coeff_u64(const EtaqSeries *handle, size_t n,
                                 uint64_t *out);

/* Coefficient n as a decimal string (exact or modular); free the string
 * with etaq_string_free. */
EtaqStatus etaq_series_coeff_string(const EtaqSeries *handle, size_t n,
                                    char **out);

/* Release a series handle. NULL is a no-op. */
void etaq_series_free(EtaqSeries *handle);

/* Release a string returned by this library. NULL is a no-op. */
void etaq_string_free(char *s);

/* Legendre symbol (n/p) for odd prime p; out is -1, 0, or 1. */
EtaqStatus etaq_legendre(int64_t n, uint64_t p, int8_t *out);

/* Kronecker symbol (a/n); out is -1, 0, or 1. */
EtaqStatus etaq_kronecker(int64_t a, int64_t n, int8_t *out);

/* Deterministic primality test for 64-bit integers. */
bool etaq_is_prime(uint64_t n);

/* Sturm bound for forms of weight weight2/2 on Gamma_0(level);
 * weight2 must be even. */
EtaqStatus etaq_sturm_bound(uint64_t weight2, uint64_t level, uint64_t *out);

/* Scan a congruence family given as JSON, e.g.
 *   {"r":3,"A":7,"B":2,"mod":7}
 * optionally with {"filter":{"p":11,"residues":[1,4,6,7,8]}}, for
 * 0 <= n <= n_max. Writes 0 for pass, 1 for fail, 2 for vacuous. */
EtaqStatus etaq_check_family_json(const char *family_json, uint64_t n_max,
                                  int32_t *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ETAQ_H */
