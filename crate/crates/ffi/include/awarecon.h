#ifndef AWARECON_H
#define AWARECON_H

/* Generated by cbindgen from awarecon-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared with C callers. Zero is success.
 */
typedef enum AwStatus {
  AW_OK = 0,
  AW_NULL_POINTER = 1,
  AW_INVALID_ARGUMENT = 2,
  AW_PARSE_ERROR = 3,
  AW_SOLVER_ERROR = 4,
  AW_UTF8_ERROR = 5,
} AwStatus;

/**
 * Opaque scenario handle.
 */
typedef struct AwScenario AwScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never null.
 */
const char *aw_last_error_message(void);

/**
 * Awareness from information share `i` in [0, 1] and energy use `e >= 0`.
 */
enum AwStatus aw_awareness_info(double i, double e, double *out);

/**
 * Information share past which more information lowers awareness at energy `e`.
 */
enum AwStatus aw_overload_threshold(double e, double *out);

/**
 * Knowledge produced from information share `i` and processing hours, with
 * diminishing-returns exponent `b` in (0, 1).
 */
enum AwStatus aw_knowledge_stock(double i, double processing_hours, double b, double *out);

/**
 * Parse scenario text into a handle. The caller owns the handle.
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum AwStatus aw_scenario_parse(const char *text, struct AwScenario **out);

/**
 * Scenario with every parameter at its default.
 * # Safety
 * `out` must be a writable pointer.
 */
enum AwStatus aw_scenario_default(struct AwScenario **out);

/**
 * Release a scenario handle. Null is a no-op.
 * # Safety
 * `scenario` must be null or a handle from this library, freed once.
 */
void aw_scenario_free(struct AwScenario *scenario);

/**
 * Run `command` ("solve", "nash", "efficient", "figure1", "sweep",
 * "extended", "trajectory") against the scenario and return the rendered
 * output ("csv" or "svg") through `out`.
 * # Safety
 * `scenario` must be a live handle; `command` and `format` must be valid
 * NUL-terminated strings; `out` must be writable.
 */
enum AwStatus aw_run(const struct AwScenario *scenario,
                     const char *command,
                     const char *format,
                     char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void aw_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AWARECON_H */
