/* C interface of the deltand engine. Strings returned through out
   parameters must be freed with dnd_string_free. */

#ifndef DELTAND_H
#define DELTAND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every FFI call.
 */
typedef enum DndStatus {
  DndOk = 0,
  DndErrNullPointer = 1,
  DndErrUtf8 = 2,
  DndErrParse = 3,
  DndErrInvalid = 4,
  /**
   * Oracle cutoff failed to stabilize; any written report is partial.
   */
  DndErrUnstable = 5,
  DndErrPanic = 6,
} DndStatus;

/**
 * Opaque engine handle; create with [`dnd_engine_new`], release with
 * [`dnd_engine_free`].
 */
typedef struct DndEngine DndEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an engine over the given coefficient field: `"32003"` for the
 * default prime field or `"q"` for exact rationals. Null on unknown field.
 *
 * # Safety
 * `field` is either null (default field) or NUL-terminated UTF-8.
 */
struct DndEngine *dnd_engine_new(const char *field);

/**
 * # Safety
 * `engine` must come from [`dnd_engine_new`] and not be used afterwards.
 */
void dnd_engine_free(struct DndEngine *engine);

/**
 * Borrowed pointer to the last error message on this engine, or null.
 * Valid until the next failing call on the same engine.
 *
 * # Safety
 * `engine` must be a live handle from [`dnd_engine_new`].
 */
const char *dnd_last_error(const struct DndEngine *engine);

/**
 * Release a string returned through an `out` parameter.
 *
 * # Safety
 * `s` must have been produced by this library and not freed before.
 */
void dnd_string_free(char *s);

/**
 * Normalize strings (walk DSL or JSON payload) into normal-form JSON.
 *
 * # Safety
 * Pointers must be valid; `input` NUL-terminated UTF-8.
 */
enum DndStatus dnd_normalize(struct DndEngine *engine,
                             const char *input,
                             uint32_t node,
                             char **out_json);

/**
 * Hom dimension between two atoms given by their identifiers.
 *
 * # Safety
 * Pointers must be valid; atom strings NUL-terminated UTF-8.
 */
enum DndStatus dnd_hom_dim(struct DndEngine *engine,
                           const char *from_atom,
                           const char *to_atom,
                           int32_t *out_dim);

/**
 * Class in the free group on the projective generators, as JSON.
 *
 * # Safety
 * Pointers must be valid; `input` NUL-terminated UTF-8.
 */
enum DndStatus dnd_k0(struct DndEngine *engine, const char *input, uint32_t node, char **out_json);

/**
 * Isomorphism test between two objects (normal-form JSON or walks).
 *
 * # Safety
 * Pointers must be valid; payloads NUL-terminated UTF-8.
 */
enum DndStatus dnd_is_iso(struct DndEngine *engine,
                          const char *left,
                          const char *right,
                          uint32_t node,
                          bool *out_iso);

/**
 * Auslander-Reiten translate of a minimal-string atom.
 *
 * # Safety
 * Pointers must be valid; `atom` NUL-terminated UTF-8.
 */
enum DndStatus dnd_tau(struct DndEngine *engine, const char *atom, char **out_atom);

/**
 * Auslander-Reiten mesh ending at a minimal-string atom, as JSON ids.
 *
 * # Safety
 * Pointers must be valid; `end_atom` NUL-terminated UTF-8.
 */
enum DndStatus dnd_mesh(struct DndEngine *engine, const char *end_atom, char **out_json);

/**
 * Stabilization onto the stable Cohen-Macaulay category, as JSON counts.
 *
 * # Safety
 * Pointers must be valid; `input` NUL-terminated UTF-8.
 */
enum DndStatus dnd_stabilize(struct DndEngine *engine,
                             const char *input,
                             uint32_t node,
                             char **out_json);

/**
 * DOT rendering of a component window around a seed atom.
 *
 * # Safety
 * Pointers must be valid; `seed` NUL-terminated UTF-8.
 */
enum DndStatus dnd_window_dot(struct DndEngine *engine,
                              const char *seed,
                              uint32_t rows,
                              uint32_t cols,
                              char **out_dot);

/**
 * Graded homotopy-category Hom report between two complexes (walk DSL,
 * walk JSON, or complex JSON payloads). Returns `DndErrUnstable` and still
 * writes the report when the cutoff did not stabilize; `cutoff` 0 means
 * the policy default.
 *
 * # Safety
 * Pointers must be valid; payloads NUL-terminated UTF-8.
 */
enum DndStatus dnd_oracle_hom(struct DndEngine *engine,
                              const char *x,
                              const char *y,
                              int64_t shift,
                              uint32_t cutoff,
                              char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELTAND_H */
