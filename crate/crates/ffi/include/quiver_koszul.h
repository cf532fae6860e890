#ifndef QUIVER_KOSZUL_H
#define QUIVER_KOSZUL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_ARGUMENT = 1,
  QK_STATUS_INVALID_UTF8 = 2,
  QK_STATUS_PARSE_ERROR = 3,
  QK_STATUS_INVALID_INPUT = 4,
  QK_STATUS_ANALYSIS_ERROR = 5,
  QK_STATUS_UNKNOWN_COMMAND = 6,
  QK_STATUS_PANIC = 7,
} QkStatus;

/**
 * A verdict as seen from C.
 */
typedef enum QkVerdict {
  QK_VERDICT_YES = 0,
  QK_VERDICT_NO = 1,
  QK_VERDICT_UNDETERMINED = 2,
} QkVerdict;

/**
 * The result of a classification run.
 */
typedef struct QkClassification QkClassification;

/**
 * A parsed quadratic presentation.
 */
typedef struct QkPresentation QkPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *qk_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *qk_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qk_string_free(char *s);

/**
 * Parses a JSON input document into a presentation handle.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum QkStatus qk_presentation_from_json(const char *json, struct QkPresentation **out);

/**
 * Frees a presentation handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void qk_presentation_free(struct QkPresentation *p);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t qk_presentation_vertex_count(const struct QkPresentation *p);

/**
 * Number of arrows, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t qk_presentation_arrow_count(const struct QkPresentation *p);

/**
 * Number of (independent, corner-split) relations, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t qk_presentation_relation_count(const struct QkPresentation *p);

/**
 * The quadratic dual as a new handle.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum QkStatus qk_presentation_dual(const struct QkPresentation *p, struct QkPresentation **out);

/**
 * The presentation as a JSON input document; free with `qk_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum QkStatus qk_presentation_to_json(const struct QkPresentation *p, char **out);

/**
 * Classifies a presentation. `max_degree` and `max_syzygy` of 0 select
 * the defaults; no oracle cross-check is run.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum QkStatus qk_classify(const struct QkPresentation *p,
                          size_t max_degree,
                          size_t max_syzygy,
                          struct QkClassification **out);

/**
 * Frees a classification handle. Null is ignored.
 *
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void qk_classification_free(struct QkClassification *r);

/**
 * Piecewise-domain verdict; `Undetermined` for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
enum QkVerdict qk_classification_piecewise_domain(const struct QkClassification *r);

/**
 * Primeness verdict; `Undetermined` for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
enum QkVerdict qk_classification_prime(const struct QkClassification *r);

/**
 * Domain verdict; `Undetermined` for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
enum QkVerdict qk_classification_domain(const struct QkClassification *r);

/**
 * The full report as JSON; free with `qk_string_free`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum QkStatus qk_classification_to_json(const struct QkClassification *r, char **out);

/**
 * Runs a command-line command (`"classify"`, `"dual"`, ...) on a JSON
 * input document with default options. On success `*out` holds the
 * rendered report (JSON when `json` is nonzero) and `*exit_code` the
 * command-line exit status.
 *
 * # Safety
 * `command` and `input` must be nul-terminated strings; `out` and
 * `exit_code` valid pointers.
 */
enum QkStatus qk_run_command(const char *command,
                             const char *input,
                             int json,
                             char **out,
                             int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVER_KOSZUL_H */
