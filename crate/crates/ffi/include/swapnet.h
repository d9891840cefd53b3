#ifndef SWAPNET_H
#define SWAPNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Sign class of a cost change; `value` is meaningful only for `FINITE`.
 */
typedef enum SwapnetDeltaKind {
  SWAPNET_DELTA_KIND_NEG_INFINITE = -1,
  SWAPNET_DELTA_KIND_FINITE = 0,
  SWAPNET_DELTA_KIND_POS_INFINITE = 1,
} SwapnetDeltaKind;

typedef enum SwapnetStatus {
  SWAPNET_STATUS_OK = 0,
  SWAPNET_STATUS_NULL_POINTER = 1,
  SWAPNET_STATUS_VERTEX_OUT_OF_RANGE = 2,
  SWAPNET_STATUS_INVALID_EDGE = 3,
  SWAPNET_STATUS_INVALID_SWAP = 4,
  SWAPNET_STATUS_DISCONNECTED = 5,
  SWAPNET_STATUS_PARSE = 6,
  SWAPNET_STATUS_INVALID_ARGUMENT = 7,
  SWAPNET_STATUS_IO = 8,
  SWAPNET_STATUS_PANIC = 9,
} SwapnetStatus;

/*
 Opaque graph handle.
 */
typedef struct SwapnetGraph SwapnetGraph;

typedef struct SwapnetCostDelta {
  enum SwapnetDeltaKind kind;
  int64_t value;
} SwapnetCostDelta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next failing call on the same thread.
 */
const char *swapnet_last_error(void);

/*
 Empty graph on `n` vertices. Never NULL.
 */
struct SwapnetGraph *swapnet_graph_new(size_t n);

/*
 Builds a graph from `m` edges stored as `2 * m` vertex ids
 `u0 v0 u1 v1 ...`. `edges` may be NULL when `m == 0`.

 # Safety
 `edges` must point to `2 * m` readable values and `out` must be writable.
 */
enum SwapnetStatus swapnet_graph_from_edges(size_t n,
                                            const size_t *edges,
                                            size_t m,
                                            struct SwapnetGraph **out);

/*
 Parses the edge-list text format (`n m` header, then `m` lines `u v`).

 # Safety
 `text` must be a nul-terminated string and `out` must be writable.
 */
enum SwapnetStatus swapnet_graph_parse(const char *text, struct SwapnetGraph **out);

/*
 Independent copy of `g`, or NULL when `g` is NULL.

 # Safety
 `g` must be NULL or a live handle.
 */
struct SwapnetGraph *swapnet_graph_clone(const struct SwapnetGraph *g);

/*
 Releases a handle. NULL is a no-op.

 # Safety
 `g` must be NULL or a live handle not freed before.
 */
void swapnet_graph_free(struct SwapnetGraph *g);

/*
 Vertex count; 0 for NULL.

 # Safety
 `g` must be NULL or a live handle.
 */
size_t swapnet_graph_n(const struct SwapnetGraph *g);

/*
 Edge count; 0 for NULL.

 # Safety
 `g` must be NULL or a live handle.
 */
size_t swapnet_graph_edge_count(const struct SwapnetGraph *g);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_graph_degree(const struct SwapnetGraph *g, size_t v, size_t *out);

/*
 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_graph_has_edge(const struct SwapnetGraph *g,
                                          size_t u,
                                          size_t v,
                                          bool *out);

/*
 # Safety
 `g` must be a live handle.
 */
enum SwapnetStatus swapnet_graph_add_edge(struct SwapnetGraph *g, size_t u, size_t v);

/*
 Applies the swap in place: `player` drops its edge to `removed` and
 connects to `added`. The graph is unchanged on failure.

 # Safety
 `g` must be a live handle.
 */
enum SwapnetStatus swapnet_graph_apply_swap(struct SwapnetGraph *g,
                                            size_t player,
                                            size_t removed,
                                            size_t added);

/*
 Edge-list text of `g` with sorted edges.

 # Safety
 `g` must be a live handle and `out` writable. Free the result with
 `swapnet_string_free`.
 */
enum SwapnetStatus swapnet_graph_to_edgelist(const struct SwapnetGraph *g, char **out);

/*
 Diameter; `SWAPNET_STATUS_DISCONNECTED` when some pair is unreachable.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_diameter(const struct SwapnetGraph *g, uint64_t *out);

/*
 Whether no vertex has a strictly cost-lowering swap.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_is_sse(const struct SwapnetGraph *g, bool *out);

/*
 Change in `player`'s sum of distances caused by the swap.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_swap_cost_delta(const struct SwapnetGraph *g,
                                           size_t player,
                                           size_t removed,
                                           size_t added,
                                           struct SwapnetCostDelta *out);

/*
 Whether no vertex has a swap that strictly raises its neighbor-degree sum.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_is_local_equilibrium(const struct SwapnetGraph *g, bool *out);

/*
 Half the sum of squared degrees.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_potential(const struct SwapnetGraph *g, uint64_t *out);

/*
 Sum of the degrees of `v`'s neighbors.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_profit(const struct SwapnetGraph *g, size_t v, uint64_t *out);

/*
 Change in `player`'s profit caused by the swap.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum SwapnetStatus swapnet_profit_delta(const struct SwapnetGraph *g,
                                        size_t player,
                                        size_t removed,
                                        size_t added,
                                        int64_t *out);

/*
 Equilibrium report as JSON: `is_equilibrium`, `witness`, `costs`.

 # Safety
 `g` must be a live handle and `out` writable. Free the result with
 `swapnet_string_free`.
 */
enum SwapnetStatus swapnet_check_sse_json(const struct SwapnetGraph *g, char **out);

/*
 Structural analysis report as JSON for the vicinity radii `ks[0..k_len]`.
 `ks` may be NULL when `k_len == 0`.

 # Safety
 `g` must be a live handle, `ks` must point to `k_len` values and `out`
 must be writable. Free the result with `swapnet_string_free`.
 */
enum SwapnetStatus swapnet_analyze_json(const struct SwapnetGraph *g,
                                        const uint32_t *ks,
                                        size_t k_len,
                                        char **out);

/*
 Releases a string returned by this library. NULL is a no-op.

 # Safety
 `s` must be NULL or a string from this library not freed before.
 */
void swapnet_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SWAPNET_H */
