#ifndef AEQ_H
#define AEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum AeqStatus {
  AEQ_STATUS_OK = 0,
  AEQ_STATUS_NULL_POINTER = 1,
  AEQ_STATUS_INVALID_ARGUMENT = 2,
  AEQ_STATUS_PARSE = 3,
  AEQ_STATUS_COINCIDENT_POINTS = 4,
  AEQ_STATUS_NOT_ALMOST_EQUIDISTANT = 5,
  AEQ_STATUS_CLIQUE_LIMIT = 6,
  AEQ_STATUS_BUFFER_TOO_SMALL = 7,
  AEQ_STATUS_INTERNAL = 8,
} AeqStatus;

typedef enum AeqConstruction {
  /*
   `dim + 1` points pairwise at unit distance.
   */
  AEQ_CONSTRUCTION_SIMPLEX = 0,
  AEQ_CONSTRUCTION_DOUBLE_SIMPLEX = 1,
  AEQ_CONSTRUCTION_SPINDLE = 2,
  /*
   Ignores `dim`.
   */
  AEQ_CONSTRUCTION_MOSER = 3,
} AeqConstruction;

/*
 Opaque graph handle.
 */
typedef struct AeqGraph AeqGraph;

/*
 Opaque point set handle.
 */
typedef struct AeqPointSet AeqPointSet;

/*
 Mirrors the core tolerance policy. Pass NULL wherever a tolerance is taken
 to use the defaults.
 */
typedef struct AeqTolerance {
  double eps_unit;
  double eps_coincide;
  double eps_rank;
  double eps_residual;
} AeqTolerance;

typedef struct AeqBounds {
  uintptr_t d;
  uintptr_t lower;
  bool has_upper;
  uintptr_t upper;
  bool has_ramsey_upper;
  uintptr_t ramsey_upper;
} AeqBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. Valid until the
 next failing call on the same thread.
 */
const char *aeq_last_error_message(void);

struct AeqTolerance aeq_tolerance_default(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void aeq_string_free(char *s);

/*
 Builds a point set from `n_points * dim` row-major coordinates.

 # Safety
 `coords` must point to `n_points * dim` readable doubles (may be NULL when
 `n_points` is 0); `out` must be writable.
 */
enum AeqStatus aeq_point_set_new(uintptr_t dim,
                                 const double *coords,
                                 uintptr_t n_points,
                                 struct AeqPointSet **out);

/*
 Parses a `{"dim": .., "points": [[..], ..]}` document.

 # Safety
 `json` must be a valid nul-terminated string; `out` must be writable.
 */
enum AeqStatus aeq_point_set_from_json(const char *json, struct AeqPointSet **out);

/*
 # Safety
 `ps` must be a live handle; `out` must be writable. Free the result with
 [`aeq_string_free`].
 */
enum AeqStatus aeq_point_set_to_json(const struct AeqPointSet *ps, char **out);

/*
 # Safety
 `ps` must be NULL or a handle from this library, freed at most once.
 */
void aeq_point_set_free(struct AeqPointSet *ps);

/*
 # Safety
 `ps` must be NULL or a live handle.
 */
uintptr_t aeq_point_set_len(const struct AeqPointSet *ps);

/*
 # Safety
 `ps` must be NULL or a live handle.
 */
uintptr_t aeq_point_set_dim(const struct AeqPointSet *ps);

/*
 Copies coordinates row-major into `buf` (capacity `cap` doubles).

 # Safety
 `ps` must be a live handle; `buf` must hold `cap` doubles.
 */
enum AeqStatus aeq_point_set_coords(const struct AeqPointSet *ps, double *buf, uintptr_t cap);

/*
 # Safety
 `out` must be writable.
 */
enum AeqStatus aeq_construct(enum AeqConstruction kind, uintptr_t dim, struct AeqPointSet **out);

/*
 Writes whether every three points contain a unit pair; when not, the
 smallest offending triple goes to `out_witness` (3 entries, may be NULL).

 # Safety
 `ps` must be a live handle; `tol` NULL or valid; `out_holds` writable;
 `out_witness` NULL or writable for 3 entries.
 */
enum AeqStatus aeq_is_almost_equidistant(const struct AeqPointSet *ps,
                                         const struct AeqTolerance *tol,
                                         bool *out_holds,
                                         uintptr_t *out_witness);

/*
 # Safety
 `ps` must be a live handle; `tol` NULL or valid; `out` writable.
 */
enum AeqStatus aeq_graph_build(const struct AeqPointSet *ps,
                               const struct AeqTolerance *tol,
                               struct AeqGraph **out);

/*
 Graph on `n` vertices from `n_edges` index pairs stored flat in `edges`.

 # Safety
 `edges` must hold `2 * n_edges` entries (may be NULL when `n_edges` is 0);
 `out` writable.
 */
enum AeqStatus aeq_graph_from_edges(uintptr_t n,
                                    const uintptr_t *edges,
                                    uintptr_t n_edges,
                                    struct AeqGraph **out);

/*
 # Safety
 `g` must be NULL or a handle from this library, freed at most once.
 */
void aeq_graph_free(struct AeqGraph *g);

/*
 # Safety
 `g` must be NULL or a live handle.
 */
uintptr_t aeq_graph_vertex_count(const struct AeqGraph *g);

/*
 # Safety
 `g` must be NULL or a live handle.
 */
uintptr_t aeq_graph_edge_count(const struct AeqGraph *g);

/*
 Copies sorted edges as flat `(i, j)` pairs, `i < j`, into `buf`
 (capacity `cap_pairs` pairs).

 # Safety
 `g` must be a live handle; `buf` must hold `2 * cap_pairs` entries.
 */
enum AeqStatus aeq_graph_edges(const struct AeqGraph *g, uintptr_t *buf, uintptr_t cap_pairs);

/*
 # Safety
 Same contract as [`aeq_is_almost_equidistant`], with a graph handle.
 */
enum AeqStatus aeq_complement_triangle_free(const struct AeqGraph *g,
                                            bool *out_holds,
                                            uintptr_t *out_witness);

/*
 Lexicographically smallest maximum clique (exact search up to `limit`
 vertices). Writes its size to `out_len` and, when it fits, the vertices to
 `buf`; returns `AEQ_STATUS_BUFFER_TOO_SMALL` otherwise.

 # Safety
 `g` must be a live handle; `buf` must hold `cap` entries; `out_len` writable.
 */
enum AeqStatus aeq_max_clique(const struct AeqGraph *g,
                              uintptr_t limit,
                              uintptr_t *buf,
                              uintptr_t cap,
                              uintptr_t *out_len);

/*
 Runs the bound audit and returns the report as JSON in `out_json`.
 `out_all_passed` receives whether every unconditional exact check passed.

 # Safety
 `ps` must be a live handle; `tol` NULL or valid; outputs writable. Free
 `*out_json` with [`aeq_string_free`].
 */
enum AeqStatus aeq_audit_json(const struct AeqPointSet *ps,
                              const struct AeqTolerance *tol,
                              bool heuristic_clique,
                              char **out_json,
                              bool *out_all_passed);

/*
 Realizes `g` in `R^dim`. On success `*out_points` receives a new handle;
 on failure it is set to NULL and `out_stress` holds the best stress found.

 # Safety
 `g` must be a live handle; `tol` NULL or valid; outputs writable.
 */
enum AeqStatus aeq_realize(const struct AeqGraph *g,
                           uintptr_t dim,
                           uintptr_t restarts,
                           uint64_t seed,
                           const struct AeqTolerance *tol,
                           struct AeqPointSet **out_points,
                           double *out_stress,
                           bool *out_success);

/*
 Known bounds for dimension `d` from the shipped table.

 # Safety
 `out` must be writable.
 */
enum AeqStatus aeq_bounds(uintptr_t d, struct AeqBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AEQ_H */
