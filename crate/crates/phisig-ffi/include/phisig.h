#ifndef PHISIG_H
#define PHISIG_H

/* Generated by cbindgen from phisig-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum PhisigStatus {
  PHISIG_STATUS_OK = 0,
  PHISIG_STATUS_NULL_ARGUMENT = 1,
  PHISIG_STATUS_OUT_OF_RANGE = 2,
  PHISIG_STATUS_RESOURCE = 3,
  PHISIG_STATUS_OVERFLOW = 4,
  PHISIG_STATUS_DOMAIN = 5,
  PHISIG_STATUS_TRUNCATED = 6,
  PHISIG_STATUS_CACHE_FORMAT = 7,
  PHISIG_STATUS_WORD_SYNTAX = 8,
  PHISIG_STATUS_IO = 9,
  PHISIG_STATUS_INVALID_UTF8 = 10,
  PHISIG_STATUS_PANIC = 11,
} PhisigStatus;

// Opaque list of u64 values (sorted preimages).
typedef struct PhisigList PhisigList;

// Opaque smallest-prime-factor sieve handle.
typedef struct PhisigSieve PhisigSieve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *phisig_version(void);

// Message for the most recent failure on this thread. Valid until the next
// failing call; never null.
const char *phisig_last_error_message(void);

// Build a sieve up to `limit` (inclusive).
enum PhisigStatus phisig_sieve_build(uint64_t limit, struct PhisigSieve **out);

// Load a sieve from a cache file written by `phisig_sieve_save` (or the CLI).
enum PhisigStatus phisig_sieve_load(const char *path, struct PhisigSieve **out);

// Write the sieve cache file.
enum PhisigStatus phisig_sieve_save(const struct PhisigSieve *sieve, const char *path);

// Inclusive upper bound of the sieve; 0 for a null handle.
uint64_t phisig_sieve_limit(const struct PhisigSieve *sieve);

void phisig_sieve_free(struct PhisigSieve *sieve);

// Euler's totient of m (m <= sieve limit).
enum PhisigStatus phisig_phi(const struct PhisigSieve *sieve, uint64_t m, uint64_t *out);

// Sum of divisors of m (m <= sieve limit); exact, errors on overflow.
enum PhisigStatus phisig_sigma(const struct PhisigSieve *sieve, uint64_t m, uint64_t *out);

// Apply a composition word (e.g. "pp", "phi^2", "ps") to m.
enum PhisigStatus phisig_iterate(const struct PhisigSieve *sieve,
                                 const char *word,
                                 uint64_t m,
                                 uint64_t *out);

// Enumerate the full preimage set of a word at `n` (sorted ascending) into a
// new list handle. `sieve` may be null: factoring then falls back to trial
// division. `cap` of 0 means the default cap.
enum PhisigStatus phisig_preimages(const struct PhisigSieve *sieve,
                                   const char *word,
                                   uint64_t n,
                                   size_t cap,
                                   struct PhisigList **out);

// Exact preimage count of a word at `n`. Truncation is an error.
enum PhisigStatus phisig_count_preimages(const struct PhisigSieve *sieve,
                                         const char *word,
                                         uint64_t n,
                                         size_t cap,
                                         uint64_t *out);

size_t phisig_list_len(const struct PhisigList *list);

// Fetch one element; fails with OutOfRange past the end.
enum PhisigStatus phisig_list_get(const struct PhisigList *list, size_t index, uint64_t *out);

void phisig_list_free(struct PhisigList *list);

// Psi(x, y): y-smooth integers up to x.
enum PhisigStatus phisig_psi_count(const struct PhisigSieve *sieve,
                                   double x,
                                   double y,
                                   size_t workers,
                                   uint64_t *out);

// Pi(x, y): primes p <= x with y-smooth p-1.
enum PhisigStatus phisig_pi_smooth_shifted(const struct PhisigSieve *sieve,
                                           double x,
                                           double y,
                                           size_t workers,
                                           uint64_t *out);

// Phi_k(x, y): m <= x whose k-th totient iterate is y-smooth.
enum PhisigStatus phisig_phi_smooth_count(const struct PhisigSieve *sieve,
                                          uint32_t k,
                                          double x,
                                          double y,
                                          size_t workers,
                                          uint64_t *out);

// #{p prime : p <= x} for x within the sieve.
enum PhisigStatus phisig_prime_count(const struct PhisigSieve *sieve, double x, uint64_t *out);

// Sum over n <= x of A^(Omega_{>z}(a(n))) with z and A derived from x and
// eta, next to its analytic exponent and Rankin parameter. `func` is
// "phi" or "sigma". Any out-pointer may be null to skip that value.
enum PhisigStatus phisig_moment_rough(const struct PhisigSieve *sieve,
                                      const char *func,
                                      double x,
                                      double eta,
                                      size_t workers,
                                      double *out_sum,
                                      double *out_log_excess,
                                      double *out_exponent,
                                      double *out_c);

// Sum over n <= x of B^(Omega(a(n))). `third_variant` selects the sharpened
// Rankin parameter c = 1 + (log x)^(-1/3) over the quarter-power default.
enum PhisigStatus phisig_moment_total(const struct PhisigSieve *sieve,
                                      const char *func,
                                      double x,
                                      double b,
                                      bool third_variant,
                                      size_t workers,
                                      double *out_sum,
                                      double *out_log_excess,
                                      double *out_exponent,
                                      double *out_c);

// Dickman's rho.
enum PhisigStatus phisig_dickman_rho(double u, double *out);

// Gamma function for s > 0.
enum PhisigStatus phisig_gamma(double s, double *out);

// L(n) = exp(log n log log log n / log log n), n >= 16.
enum PhisigStatus phisig_big_l(double n, double *out);

// L_{k,beta}(n), n >= 16.
enum PhisigStatus phisig_l_k_beta(double n, uint32_t k, double beta, double *out);

// The search limit x = n log(2n).
double phisig_search_limit(uint64_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHISIG_H */
