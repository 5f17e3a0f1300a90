#ifndef CLUSTERPOS_H
#define CLUSTERPOS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum CpStatus {
  CP_STATUS_OK = 0,
  CP_STATUS_NULL_POINTER = 1,
  CP_STATUS_INVALID_UTF8 = 2,
  CP_STATUS_INVALID_ARGUMENT = 3,
  CP_STATUS_PARSE = 4,
  CP_STATUS_CONTEXT_MISMATCH = 5,
  CP_STATUS_EXPONENT_OVERFLOW = 6,
  CP_STATUS_NOT_DIVISIBLE = 7,
  CP_STATUS_ACYCLIC_INPUT = 8,
  CP_STATUS_ENUMERATION_CAP = 9,
  CP_STATUS_RESOURCE_LIMIT = 10,
  CP_STATUS_THEOREM_VIOLATION = 11,
  CP_STATUS_INTERNAL_CONSISTENCY = 12,
  CP_STATUS_PANIC = 13,
} CpStatus;

/**
 * Opaque Laurent polynomial.
 */
typedef struct CpPoly CpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *cp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cp_version(void);

/**
 * `c_n` of the Chebyshev-type sequence with parameter `r`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CpStatus cp_cheb(int64_t r, int64_t n, int64_t *out);

/**
 * Rank 2 cluster variable `x_n` for the matrix with `r` arrows.
 *
 * # Safety
 * `out` must be valid for writes. The result is owned by the caller.
 */
enum CpStatus cp_greedy_rank2(int64_t r, int64_t n, struct CpPoly **out);

/**
 * Rank 3 cluster variable `x_n` of the cycle `(r,s,t)` in `x1, x2, x3`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CpStatus cp_rank3_dyck(int64_t r, int64_t s, int64_t t, int64_t n, struct CpPoly **out);

/**
 * Cluster monomial `x_{n+1}^p x_n^q` of the cycle `(r,s,t)` via the mixed formula.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CpStatus cp_mixed_expand(int64_t r,
                              int64_t s,
                              int64_t t,
                              int64_t n,
                              int64_t p,
                              int64_t q,
                              struct CpPoly **out);

/**
 * Cluster variable at vertex `var` (1-based) after mutating along `seq`.
 * `b` is a row-major `rank x rank` skew-symmetric matrix.
 *
 * # Safety
 * `b` must point to `rank*rank` values and `seq` to `len` values.
 */
enum CpStatus cp_oracle_expand(const int64_t *b,
                               size_t rank,
                               const size_t *seq,
                               size_t len,
                               size_t var,
                               struct CpPoly **out);

/**
 * Parses `text` in the variables `names[0..nvars]`.
 *
 * # Safety
 * `names` must point to `nvars` NUL-terminated strings.
 */
enum CpStatus cp_poly_parse(const char *const *names,
                            size_t nvars,
                            const char *text,
                            struct CpPoly **out);

/**
 * Reads the JSON form `{"vars": [...], "terms": [{"exp": [...], "coef": "..."}]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum CpStatus cp_poly_from_json(const char *json, struct CpPoly **out);

/**
 * JSON form of `p`; release with `cp_string_free`. NULL if `p` is NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
char *cp_poly_to_json(const struct CpPoly *p);

/**
 * Human-readable form of `p`; release with `cp_string_free`.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
char *cp_poly_to_string(const struct CpPoly *p);

/**
 * Number of nonzero terms; 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t cp_poly_num_terms(const struct CpPoly *p);

/**
 * Smallest coefficient as a decimal string, NULL for the zero polynomial.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
char *cp_poly_min_coefficient(const struct CpPoly *p);

/**
 * Writes whether `a == b` (same variables, same terms).
 *
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum CpStatus cp_poly_equal(const struct CpPoly *a, const struct CpPoly *b, bool *out);

/**
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum CpStatus cp_poly_add(const struct CpPoly *a, const struct CpPoly *b, struct CpPoly **out);

/**
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum CpStatus cp_poly_mul(const struct CpPoly *a, const struct CpPoly *b, struct CpPoly **out);

/**
 * Exact quotient `num / den`; `CP_STATUS_NOT_DIVISIBLE` if there is a remainder.
 *
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum CpStatus cp_poly_div_exact(const struct CpPoly *num,
                                const struct CpPoly *den,
                                struct CpPoly **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void cp_poly_free(struct CpPoly *p);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void cp_string_free(char *s);

/**
 * Expands every cluster variable along `seq` for a rank 3 matrix and
 * writes whether all coefficients are nonnegative. Passing a non-positive
 * `max_terms` or `max_bits` disables the size guard.
 *
 * # Safety
 * `b` must point to 9 values and `seq` to `len` values.
 */
enum CpStatus cp_check_positivity(const int64_t *b,
                                  const size_t *seq,
                                  size_t len,
                                  double max_terms,
                                  double max_bits,
                                  bool *out);

/**
 * Runs the node-by-node structural check along `seq` for a non-acyclic
 * rank 3 matrix and writes whether every check passed.
 *
 * # Safety
 * `b` must point to 9 values and `seq` to `len` values.
 */
enum CpStatus cp_verify_sequence(const int64_t *b,
                                 const size_t *seq,
                                 size_t len,
                                 double max_terms,
                                 double max_bits,
                                 bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CLUSTERPOS_H */
