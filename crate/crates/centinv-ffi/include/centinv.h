#ifndef CENTINV_H
#define CENTINV_H

/* Generated by cbindgen from centinv-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum CentinvStatus {
  CENTINV_STATUS_OK = 0,
  // The computation ran but at least one check failed.
  CENTINV_STATUS_CHECK_FAILED = 1,
  // Bad partition, case, field or flag.
  CENTINV_STATUS_INVALID_INPUT = 2,
  // A resource cap, degree cap or arithmetic failure.
  CENTINV_STATUS_COMPUTE_ERROR = 3,
  CENTINV_STATUS_NULL_POINTER = 4,
  // A panic was caught at the boundary.
  CENTINV_STATUS_PANIC = 5,
} CentinvStatus;

// Opaque handle to a fixed `(λ, case)` centraliser.
typedef struct CentinvCentralizer CentinvCentralizer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread; valid until the next failing call.
const char *centinv_last_error_message(void);

// Release a string returned by this library.
//
// # Safety
// `s` must have been returned by a `centinv_*` function and not freed yet.
void centinv_string_free(char *s);

// Create a centraliser handle for a partition text like "3,2,1" and a
// case label in {gl, sp, so}.
//
// # Safety
// `lambda` and `case_` must be valid NUL-terminated strings; `out` must
// be a valid pointer.
enum CentinvStatus centinv_centralizer_new(const char *lambda,
                                           const char *case_,
                                           struct CentinvCentralizer **out);

// Release a centraliser handle.
//
// # Safety
// `handle` must come from [`centinv_centralizer_new`] and not be freed
// twice.
void centinv_centralizer_free(struct CentinvCentralizer *handle);

// Dimension of the centraliser.
//
// # Safety
// `handle` must be a live handle; `out` must be valid.
enum CentinvStatus centinv_centralizer_dim(const struct CentinvCentralizer *handle, size_t *out);

// Index of the case's coadjoint action (the generic stabiliser dimension).
//
// # Safety
// `handle` must be a live handle; `out` must be valid.
enum CentinvStatus centinv_centralizer_index(const struct CentinvCentralizer *handle, int64_t *out);

// JSON listing of the basis (and the spanning sets for sp/so).
//
// # Safety
// `handle` must be a live handle; `out_json` must be valid and the result
// freed with [`centinv_string_free`].
enum CentinvStatus centinv_centralizer_basis_json(const struct CentinvCentralizer *handle,
                                                  char **out_json);

// Elementary invariants (all of them, or one when `r > 0`) as JSON.
//
// # Safety
// String arguments must be valid NUL-terminated strings; `out_json` must
// be valid and the result freed with [`centinv_string_free`].
enum CentinvStatus centinv_invariants_json(const char *lambda,
                                           const char *case_,
                                           const char *field,
                                           int64_t r,
                                           char **out_json);

// Run a verification suite; the report JSON is written even when checks
// fail (status `CheckFailed`).
//
// # Safety
// String arguments must be valid NUL-terminated strings; `out_json` must
// be valid and the result freed with [`centinv_string_free`].
enum CentinvStatus centinv_verify_json(const char *lambda,
                                       const char *case_,
                                       const char *field,
                                       const char *suite,
                                       uint32_t degree_cap,
                                       uint64_t seed,
                                       char **out_json);

// Enveloping-algebra checks (`milner`, `pcentre`, `grbeta`, `bound`).
//
// # Safety
// String arguments must be valid NUL-terminated strings; `out_json` must
// be valid and the result freed with [`centinv_string_free`].
enum CentinvStatus centinv_envelope_json(const char *lambda,
                                         const char *case_,
                                         const char *field,
                                         const char *check,
                                         uint32_t degree_cap,
                                         char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CENTINV_H */
