#ifndef EIGENTWIST_H
#define EIGENTWIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EtStatus {
  ET_STATUS_OK = 0,
  ET_STATUS_NULL_POINTER = 1,
  ET_STATUS_INVALID_UTF8 = 2,
  ET_STATUS_SCHEMA = 3,
  ET_STATUS_DOMAIN = 4,
  ET_STATUS_INVALID_MOVE = 5,
  ET_STATUS_REDUCIBLE = 6,
  ET_STATUS_PARABOLIC = 7,
  ET_STATUS_SINGULAR = 8,
  ET_STATUS_COINCIDENT = 9,
  ET_STATUS_DEGENERATE = 10,
  ET_STATUS_PANIC = 11,
} EtStatus;

typedef struct EtParams EtParams;

typedef struct EtRepresentation EtRepresentation;

/**
 * A validated surface with its base triple.
 */
typedef struct EtSurface EtSurface;

typedef struct EtComplex {
  double re;
  double im;
} EtComplex;

/**
 * `((a, b), (c, d))`.
 */
typedef struct EtMatrix {
  struct EtComplex a;
  struct EtComplex b;
  struct EtComplex c;
  struct EtComplex d;
} EtMatrix;

/**
 * `(a, b, c, z₁, z₂)` of a one-holed torus.
 */
typedef struct EtShear {
  struct EtComplex a;
  struct EtComplex b;
  struct EtComplex c;
  struct EtComplex z1;
  struct EtComplex z2;
} EtShear;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *et_last_error(void);

/**
 * Library version as a static string.
 */
const char *et_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void et_string_free(char *s);

/**
 * Parses and validates a surface JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string, `out` a writable pointer.
 */
enum EtStatus et_surface_from_json(const char *json, struct EtSurface **out_surface);

/**
 * A built-in surface: "four-holed", "one-holed" or "genus2".
 *
 * # Safety
 * `name` must be a nul-terminated string, `out` a writable pointer.
 */
enum EtStatus et_surface_fixture(const char *name, struct EtSurface **out_surface);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void et_surface_free(struct EtSurface *s);

/**
 * Surface as a newly allocated JSON string (free with `et_string_free`).
 *
 * # Safety
 * `s` must be a live handle, `out` a writable pointer.
 */
enum EtStatus et_surface_to_json(const struct EtSurface *s, char **out_json);

/**
 * An empty parameter set.
 */
struct EtParams *et_params_new(void);

/**
 * # Safety
 * `json` must be a nul-terminated string, `out` a writable pointer.
 */
enum EtStatus et_params_from_json(const char *json, struct EtParams **out_params);

/**
 * # Safety
 * `p` must be a live handle, `out` a writable pointer.
 */
enum EtStatus et_params_to_json(const struct EtParams *p, char **out_json);

/**
 * # Safety
 * `p` must be a live handle.
 */
enum EtStatus et_params_set_eigen(struct EtParams *p, size_t edge, struct EtComplex e);

/**
 * # Safety
 * `p` must be a live handle.
 */
enum EtStatus et_params_set_twist(struct EtParams *p, size_t edge, struct EtComplex t);

/**
 * # Safety
 * `p` must be a live handle, `out` a writable pointer.
 */
enum EtStatus et_params_get_eigen(const struct EtParams *p, size_t edge, struct EtComplex *out_e);

/**
 * # Safety
 * `p` must be a live handle, `out` a writable pointer.
 */
enum EtStatus et_params_get_twist(const struct EtParams *p, size_t edge, struct EtComplex *out_t);

/**
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void et_params_free(struct EtParams *p);

/**
 * Builds the SL(2,C) representation on the surface's stored or default tree.
 *
 * # Safety
 * Handles must be live, `out` a writable pointer.
 */
enum EtStatus et_build(const struct EtSurface *s,
                       const struct EtParams *p,
                       struct EtRepresentation **out_rep);

/**
 * # Safety
 * `r` must come from this library and not be freed twice.
 */
void et_rep_free(struct EtRepresentation *r);

/**
 * Number of presentation generators.
 *
 * # Safety
 * `r` must be a live handle.
 */
size_t et_rep_generator_count(const struct EtRepresentation *r);

/**
 * Image of a generator named like "alpha1", "beta2", "delta1".
 *
 * # Safety
 * `r` must be a live handle, `name` nul-terminated, `out` writable.
 */
enum EtStatus et_rep_generator(const struct EtRepresentation *r,
                               const char *name,
                               struct EtMatrix *out_m);

/**
 * Trace of a word such as "alpha1 beta1^-1".
 *
 * # Safety
 * `r` must be a live handle, `word` nul-terminated, `out` writable.
 */
enum EtStatus et_rep_trace(const struct EtRepresentation *r,
                           const char *word,
                           struct EtComplex *out_tr);

/**
 * Largest relation residual.
 *
 * # Safety
 * `r` must be a live handle, `out` writable.
 */
enum EtStatus et_rep_max_residual(const struct EtRepresentation *r, double *out_res);

/**
 * Coordinates of a representation. With `hint` non-null the eigenvalue
 * branches nearest to its eigenvalues are chosen, otherwise `|e| > 1`.
 *
 * # Safety
 * Handles must be live (`hint` may be null), `out` writable.
 */
enum EtStatus et_recover(const struct EtRepresentation *r,
                         const struct EtSurface *s,
                         const struct EtParams *hint,
                         struct EtParams **out_params);

/**
 * Applies a move given as JSON, e.g. `{"kind":"reverse_edge","target":1}`.
 *
 * # Safety
 * Handles must be live, `move_json` nul-terminated, outputs writable.
 */
enum EtStatus et_apply_move(const struct EtSurface *s,
                            const struct EtParams *p,
                            const char *move_json,
                            struct EtSurface **out_surface,
                            struct EtParams **out_params);

/**
 * Shear-bend coordinates of a one-holed torus.
 *
 * # Safety
 * `out` must be writable.
 */
enum EtStatus et_one_holed_to_shear(struct EtComplex e1,
                                    struct EtComplex e2,
                                    struct EtComplex t1,
                                    struct EtShear *out_shear);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENTWIST_H */
