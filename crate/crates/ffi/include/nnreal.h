/* Generated by cbindgen. Do not edit. */

#ifndef NNREAL_H
#define NNREAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NnrStatus {
  NNR_STATUS_OK = 0,
  // Null pointer, invalid UTF-8 or an index out of range.
  NNR_STATUS_INVALID_ARGUMENT = 1,
  NNR_STATUS_PARSE_ERROR = 2,
  NNR_STATUS_SCHEMA_ERROR = 3,
  NNR_STATUS_NOT_REALIZABLE = 4,
  NNR_STATUS_NOT_FOUND = 5,
  // Any other construction failure.
  NNR_STATUS_DOMAIN_ERROR = 6,
  NNR_STATUS_VERIFICATION_FAILED = 7,
  NNR_STATUS_PANIC = 8,
} NnrStatus;

typedef struct NnrCertificate NnrCertificate;

typedef struct NnrSpectrum NnrSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library from the same thread.
const char *nnr_last_error(void);

// Library version as a static string.
const char *nnr_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void nnr_string_free(char *s);

// Parses a spectrum from JSON (an entries array or `{"perron", "entries"}`).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum NnrStatus nnr_spectrum_from_json(const char *text, struct NnrSpectrum **out);

// # Safety
// `s` must be null or a handle from [`nnr_spectrum_from_json`].
void nnr_spectrum_free(struct NnrSpectrum *s);

// Canonical JSON for the spectrum.
//
// # Safety
// `s` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_spectrum_to_json(const struct NnrSpectrum *s, char **out);

// Number of eigenvalues counted with multiplicity.
//
// # Safety
// `s` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_spectrum_size(const struct NnrSpectrum *s, size_t *out);

// Number of Jordan forms the multiplicities allow.
//
// # Safety
// `s` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_spectrum_jcf_count(const struct NnrSpectrum *s, size_t *out);

// Runs the realizability test. `realizable` receives 1 or 0 and `reason`,
// when not null, the verdict text.
//
// # Safety
// `s` must be a valid handle, `realizable` a valid pointer and `reason`
// null or a valid pointer.
enum NnrStatus nnr_spectrum_check(const struct NnrSpectrum *s, int32_t *realizable, char **reason);

// Realizes the spectrum with the Jordan form at `jcf_index` in the
// enumeration order.
//
// # Safety
// `s` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_realize(const struct NnrSpectrum *s,
                           size_t jcf_index,
                           struct NnrCertificate **out);

// Realizes the spectrum with a Jordan form given as JSON.
//
// # Safety
// `s` must be a valid handle, `jcf` a NUL-terminated string and `out` a
// valid pointer.
enum NnrStatus nnr_realize_jcf_json(const struct NnrSpectrum *s,
                                    const char *jcf,
                                    struct NnrCertificate **out);

// # Safety
// `c` must be null or a handle from one of the realize functions.
void nnr_certificate_free(struct NnrCertificate *c);

// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_certificate_to_json(const struct NnrCertificate *c, char **out);

// Order of the certified matrix.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_certificate_size(const struct NnrCertificate *c, size_t *out);

// Entry `(row, col)` (0-based) as a rational string such as `"-3/4"`.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum NnrStatus nnr_certificate_entry(const struct NnrCertificate *c,
                                     size_t row,
                                     size_t col,
                                     char **out);

// Recomputes every verdict of the certificate from its matrix.
//
// # Safety
// `c` must be a valid handle.
enum NnrStatus nnr_certificate_reverify(const struct NnrCertificate *c);

// Checks a certificate document (matrix plus claims). Returns `Ok` when
// every claim holds and `VerificationFailed` otherwise; `report`, when not
// null, receives the check as JSON in both cases.
//
// # Safety
// `text` must be a NUL-terminated string and `report` null or a valid
// pointer.
enum NnrStatus nnr_verify_json(const char *text, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NNREAL_H */
