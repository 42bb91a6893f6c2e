#ifndef DPROC_H
#define DPROC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function. `DPROC_OK` is zero;
 * the non-zero codes mirror the CLI exit codes where one exists.
 */
typedef enum DprocStatus {
  DprocOk = 0,
  DprocNullArgument = 1,
  DprocParseError = 2,
  DprocAlphabetTooLarge = 3,
  DprocUnknownActivity = 4,
  DprocDegenerateProcess = 5,
  DprocMismatchedLength = 6,
  DprocInvalidUtf8 = 7,
} DprocStatus;

/**
 * Opaque handle to a parsed process together with its stakeholders.
 */
typedef struct DprocSystem DprocSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or null. The pointer
 * is valid until the next failing call on the same thread.
 */
const char *dproc_last_error(void);

/**
 * Parses a process description. On success stores a new handle in `out`;
 * release it with `dproc_system_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DprocStatus dproc_system_parse(const char *text, struct DprocSystem **out);

/**
 * Releases a handle returned by `dproc_system_parse`. Null is a no-op.
 *
 * # Safety
 * `handle` must come from `dproc_system_parse` and not be freed twice.
 */
void dproc_system_free(struct DprocSystem *handle);

/**
 * Number of activities in the process.
 *
 * # Safety
 * `handle` must be a live handle from `dproc_system_parse`.
 */
uint32_t dproc_activity_count(const struct DprocSystem *handle);

/**
 * Number of declared stakeholders.
 *
 * # Safety
 * `handle` must be a live handle from `dproc_system_parse`.
 */
uint32_t dproc_stakeholder_count(const struct DprocSystem *handle);

/**
 * Counts the unique traces of the process. `max_alphabet` bounds the
 * alphabet size accepted for enumeration; pass 12 for the default limit.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum DprocStatus dproc_trace_count(const struct DprocSystem *handle,
                                   uint32_t max_alphabet,
                                   uint64_t *out);

/**
 * Checks one trace against every constraint of the process. `events`
 * points at `len` activity identifiers; `out` receives 1 when all
 * constraints hold, 0 otherwise.
 *
 * # Safety
 * `handle` must be live, `events` must point at `len` readable values
 * (null is allowed when `len` is 0), and `out` must be valid.
 */
enum DprocStatus dproc_check_trace(const struct DprocSystem *handle,
                                   const uint32_t *events,
                                   uintptr_t len,
                                   uint8_t *out);

/**
 * Enumerates the process and writes one utility per stakeholder into
 * `out`, which must hold `dproc_stakeholder_count` values.
 *
 * # Safety
 * `handle` must be live and `out` must point at `len` writable doubles.
 */
enum DprocStatus dproc_utilities(const struct DprocSystem *handle,
                                 uint32_t max_alphabet,
                                 double *out,
                                 uintptr_t len);

/**
 * Utility of `good` desirable traces out of `total`:
 * ln(1 + good) / ln(1 + total).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DprocStatus dproc_utility(uint64_t good, uint64_t total, double *out);

/**
 * Euclidean distance of a utility vector from the all-ones ideal.
 *
 * # Safety
 * `values` must point at `len` readable doubles and `out` must be valid.
 */
enum DprocStatus dproc_h_distance(const double *values, uintptr_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPROC_H */
