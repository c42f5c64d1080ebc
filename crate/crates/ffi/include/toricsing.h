#ifndef TORICSING_H
#define TORICSING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsKind {
  TS_KIND_FOLIATION = 0,
  TS_KIND_DISTRIBUTION = 1,
} TsKind;

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  TS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input text or parameters.
   */
  TS_STATUS_INVALID_INPUT = 3,
  /**
   * Well-formed input outside the domain of the operation.
   */
  TS_STATUS_DOMAIN = 4,
  /**
   * Internal failure; the library state is still usable.
   */
  TS_STATUS_PANIC = 5,
} TsStatus;

/**
 * Opaque model handle.
 */
typedef struct TsModel TsModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next library call on the same thread.
 */
const char *ts_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ts_string_free(char *s);

/**
 * Builds a catalog model from a name such as `weighted:1,1,2`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` writable.
 */
enum TsStatus ts_model_builtin(const char *spec, struct TsModel **out);

/**
 * Parses a model file.
 *
 * # Safety
 * `source` must be a valid C string and `out` writable.
 */
enum TsStatus ts_model_parse(const char *source, struct TsModel **out);

/**
 * # Safety
 * `model` must be null or a handle from this library, not yet freed.
 */
void ts_model_free(struct TsModel *model);

/**
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum TsStatus ts_model_serialize(const struct TsModel *model, char **out);

/**
 * # Safety
 * `model` must be a live handle; the outputs must be writable.
 */
enum TsStatus ts_model_shape(const struct TsModel *model, size_t *out_dim, size_t *out_rank);

/**
 * Singularity count of a foliation of degree `degree`, given as one
 * comma-separated entry per Picard generator. Entries may be symbols.
 *
 * # Safety
 * `model` must be a live handle, `degree` a valid C string, `out` writable.
 */
enum TsStatus ts_foliation_count(const struct TsModel *model, const char *degree, char **out);

/**
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum TsStatus ts_euler_number(const struct TsModel *model, char **out);

/**
 * Count on the complete intersection of the given degrees in `P(weights)`.
 *
 * # Safety
 * `weights` and `classes` must point to the stated number of entries
 * (either may be null when its length is zero); `degree` must be a valid C
 * string and `out` writable.
 */
enum TsStatus ts_wci_count(const int64_t *weights,
                           size_t n_weights,
                           const int64_t *classes,
                           size_t n_classes,
                           const char *degree,
                           enum TsKind kind,
                           char **out);

/**
 * Local multiplicity of the germ with comma-separated `components` in the
 * comma-separated chart variables `vars`, and its index for a local group
 * of order `group_order`.
 *
 * # Safety
 * `vars` and `components` must be valid C strings; outputs writable.
 */
enum TsStatus ts_local_multiplicity(const char *vars,
                                    const char *components,
                                    uint64_t group_order,
                                    uint64_t *out_multiplicity,
                                    char **out_index);

/**
 * Runs the command-line interface on `argv[0..argc]` (without the program
 * name) and returns its exit code, or -1 if the arguments are unusable.
 * Either output pointer may be null to discard that stream.
 *
 * # Safety
 * `argv` must point to `argc` valid C strings.
 */
int ts_run_cli(size_t argc, const char *const *argv, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICSING_H */
