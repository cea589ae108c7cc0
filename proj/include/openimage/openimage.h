#ifndef OPENIMAGE_OPENIMAGE_H
#define OPENIMAGE_OPENIMAGE_H

/*
 * C interface to libopenimage.
 *
 * All commands take and return JSON text. Returned strings are owned by the
 * caller and released with oi_string_free. On any status other than OI_OK the
 * message for the calling thread is available from oi_last_error until the
 * next call on that thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define OI_API __declspec(dllexport)
#else
#define OI_API __attribute__((visibility("default")))
#endif

#define OI_ABI_VERSION 1

typedef enum oi_status {
  OI_OK = 0,
  OI_INVALID_INPUT = 1,
  OI_NON_UNIT = 2,
  OI_BAD_VALUATION = 3,
  OI_HYPOTHESIS_FAILS = 4,
  OI_PRECISION_EXHAUSTED = 5,
  OI_ODD_TRACE = 6,
  OI_SPAN_TOO_SMALL = 7,
  OI_DEGENERATE_PROJECTION = 8,
  OI_DEGENERATE = 9,
  OI_SIZE_CAP_EXCEEDED = 10,
  OI_SIDE_CONDITION_VIOLATED = 11,
  OI_NON_SQUARE_DET = 12,
  OI_BRANCH_AMBIGUITY = 13,
  OI_PRECONDITION_FAILED = 14,
  OI_INCOMPARABLE_REPRESENTATIONS = 15,
  OI_CERTIFICATION_FAILED = 16,
  OI_INTERNAL = 99
} oi_status;

/* Run settings: prime, precision, seed, closure cap, trial override. */
typedef struct oi_session oi_session;

OI_API int oi_abi_version(void);
OI_API const char* oi_status_name(oi_status status);
OI_API const char* oi_last_error(void);

OI_API oi_status oi_session_create(oi_session** out);
OI_API void oi_session_destroy(oi_session* session);
/* ell = 0 or precision = 0 leave the value to the input JSON. */
OI_API oi_status oi_session_set_prime(oi_session* session, uint64_t ell, int precision);
OI_API oi_status oi_session_set_seed(oi_session* session, uint64_t seed);
OI_API oi_status oi_session_set_cap(oi_session* session, uint64_t cap);
/* 0 restores the per-suite defaults. */
OI_API oi_status oi_session_set_trials(oi_session* session, int64_t trials);

/*
 * command: "bounds", "lie", "inner", "goursat" or "verify". input_json may be
 * NULL for "verify". On OI_OK, *report receives the report and *passed is 1
 * unless a check in the report was falsified.
 */
OI_API oi_status oi_run(oi_session* session, const char* command, const char* input_json, char** report,
                        int* passed);

/* Comma-separated list of verification suite names. */
OI_API oi_status oi_suite_names(char** names);

/* Index of the congruence ball B(s) in SL2(Z_ell), as a decimal string. */
OI_API oi_status oi_ball_index(uint64_t ell, int s, char** decimal);

OI_API void oi_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
