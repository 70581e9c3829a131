#ifndef FROBPOW_H
#define FROBPOW_H

#include <stdbool.h>
#include <stdint.h>

// Result codes. `FP_OK` is zero; everything else is a failure.
typedef enum FpStatus {
  FP_OK = 0,
  FP_NULL_ARGUMENT = 1,
  FP_INVALID_UTF8 = 2,
  FP_PARSE = 3,
  FP_RESOURCE = 4,
  FP_UNSUPPORTED = 5,
  FP_INVALID_ARGUMENT = 6,
  FP_SESSION = 7,
  FP_PANIC = 8,
} FpStatus;

// Opaque ideal handle. Owns its ring and caches its Groebner basis.
typedef struct FpIdeal FpIdeal;

// Opaque ring handle.
typedef struct FpRing FpRing;

// Message of the last failure on this thread, or null. Valid until the next
// failing call on the same thread.
const char *fp_last_error(void);

// Library version, statically allocated.
const char *fp_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void fp_string_free(char *s);

// Parses `GF(p)[vars]/(relations)` or a builtin ring name.
//
// # Safety
// `spec` must be a NUL-terminated string and `out_ring` a valid pointer.
enum FpStatus fp_ring_parse(const char *spec, struct FpRing **out_ring);

// # Safety
// `ring` must be null or a handle from [`fp_ring_parse`], not yet freed.
void fp_ring_free(struct FpRing *ring);

// Characteristic of the ring, or 0 for a null handle.
//
// # Safety
// `ring` must be null or a live handle.
uint64_t fp_ring_characteristic(const struct FpRing *ring);

// # Safety
// `ring` must be a live handle and `out_text` a valid pointer.
enum FpStatus fp_ring_describe(const struct FpRing *ring, char **out_text);

// Parses a generator list such as `(x, y^2)`, or `m` for the maximal ideal.
//
// # Safety
// `ring` must be a live handle, `gens` NUL-terminated, `out_ideal` valid.
enum FpStatus fp_ideal_parse(const struct FpRing *ring,
                             const char *gens,
                             struct FpIdeal **out_ideal);

// # Safety
// `ideal` must be null or a handle from this library, not yet freed.
void fp_ideal_free(struct FpIdeal *ideal);

// Reduced Groebner basis of `(gens) + J` in the ambient ring, as `{g1, g2, ...}`.
//
// # Safety
// `ideal` must be a live handle and `out_text` valid.
enum FpStatus fp_ideal_groebner(const struct FpIdeal *ideal, char **out_text);

// # Safety
// `ideal` must be a live handle, `poly` NUL-terminated, `out_text` valid.
enum FpStatus fp_ideal_normal_form(const struct FpIdeal *ideal, const char *poly, char **out_text);

// # Safety
// `ideal` must be a live handle, `poly` NUL-terminated, `out_member` valid.
enum FpStatus fp_ideal_contains(const struct FpIdeal *ideal, const char *poly, bool *out_member);

// Length of `A/I`. Fails with `FP_UNSUPPORTED` when `I` is not zero-dimensional.
//
// # Safety
// `ideal` must be a live handle and `out_length` valid.
enum FpStatus fp_ideal_length(const struct FpIdeal *ideal, uint64_t *out_length);

// Krull dimension of `A/I`; `-1` for the unit ideal.
//
// # Safety
// `ideal` must be a live handle and `out_dim` valid.
enum FpStatus fp_ideal_krull_dim(const struct FpIdeal *ideal, int64_t *out_dim);

// `I^[q]` as a new handle. `q` must be a power of the characteristic.
//
// # Safety
// `ideal` must be a live handle and `out_ideal` valid.
enum FpStatus fp_ideal_frobenius_power(const struct FpIdeal *ideal,
                                       uint64_t q,
                                       struct FpIdeal **out_ideal);

// Hilbert-Kunz rows for `e = 0..=emax` as a JSON array of
// `{e, q, length, ratio_num, ratio_den}`.
//
// # Safety
// `ideal` must be a live handle and `out_json` valid.
enum FpStatus fp_hilbert_kunz(const struct FpIdeal *ideal, uint32_t emax, char **out_json);

// Frobenius closure verdict for `u` as JSON.
//
// # Safety
// `ideal` must be a live handle, `u` NUL-terminated, `out_json` valid.
enum FpStatus fp_frobenius_closure(const struct FpIdeal *ideal,
                                   const char *u,
                                   uint32_t emax,
                                   char **out_json);

// Tight closure verdict for `u` as JSON. `test_element` null selects the
// Jacobian strategy; otherwise `c` is used with exponent `test_power`.
//
// # Safety
// `ideal` must be a live handle, `u` NUL-terminated, `test_element` null or
// NUL-terminated, `out_json` valid.
enum FpStatus fp_tight_closure(const struct FpIdeal *ideal,
                               const char *u,
                               const char *test_element,
                               uint32_t test_power,
                               uint32_t emax,
                               char **out_json);

// Runs a session given as JSON text and returns the report envelope.
// `filter` may be null. `out_exit` receives 0 (all passed), 2 (a check
// failed) or 1 (a task errored). Session-level problems return
// `FP_SESSION` with a diagnostic such as `error[E003] ...`.
//
// # Safety
// `session_json` must be NUL-terminated, `filter` null or NUL-terminated,
// `out_report` and `out_exit` valid.
enum FpStatus fp_session_run(const char *session_json,
                             const char *filter,
                             bool parallel,
                             char **out_report,
                             int32_t *out_exit);

#endif  /* FROBPOW_H */
