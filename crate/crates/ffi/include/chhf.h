#ifndef CHHF_H
#define CHHF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Input format for [`chhf_graph_parse`].
 */
typedef enum ChhfFormat {
  CHHF_FORMAT_EDGE_LIST = 0,
  CHHF_FORMAT_JSON = 1,
} ChhfFormat;

/**
 * Result code of every fallible call.
 */
typedef enum ChhfStatus {
  CHHF_STATUS_OK = 0,
  CHHF_STATUS_NULL_POINTER = 1,
  CHHF_STATUS_PARSE = 2,
  CHHF_STATUS_PRECONDITION = 3,
  CHHF_STATUS_CAP_EXCEEDED = 4,
  /**
   * A full report ran and at least one check failed.
   */
  CHHF_STATUS_AXIOM_FAILED = 5,
  CHHF_STATUS_INTERNAL = 6,
  CHHF_STATUS_PANIC = 7,
} ChhfStatus;

/**
 * A simple undirected graph.
 */
typedef struct ChhfGraph ChhfGraph;

/**
 * A host graph with its factor system and X-graphs.
 */
typedef struct ChhfTriple ChhfTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if it succeeded.
 * The pointer stays valid until the next call on the same thread.
 */
const char *chhf_last_error_message(void);

/**
 * Parses a graph from NUL-terminated text.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out_graph` a valid pointer.
 */
enum ChhfStatus chhf_graph_parse(const char *text,
                                 enum ChhfFormat format,
                                 struct ChhfGraph **out_graph);

/**
 * Builds the `dim`-dimensional hypercube.
 *
 * # Safety
 * `out_graph` must be a valid pointer.
 */
enum ChhfStatus chhf_graph_hypercube(size_t dim, struct ChhfGraph **out_graph);

/**
 * Builds the Hamming graph `H(dim, q)`, the product of `dim` copies of `K_q`.
 *
 * # Safety
 * `out_graph` must be a valid pointer.
 */
enum ChhfStatus chhf_graph_hamming(size_t q, size_t dim, struct ChhfGraph **out_graph);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and must not be used afterwards.
 */
void chhf_graph_free(struct ChhfGraph *g);

/**
 * Number of vertices, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t chhf_graph_vertex_count(const struct ChhfGraph *g);

/**
 * Number of edges, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t chhf_graph_edge_count(const struct ChhfGraph *g);

/**
 * Writes whether the graph is quasi-median.
 *
 * # Safety
 * `g` must be a live graph handle and `out_flag` a valid pointer.
 */
enum ChhfStatus chhf_graph_is_quasi_median(const struct ChhfGraph *g, bool *out_flag);

/**
 * Writes the number of hyperplanes. The graph must be quasi-median.
 *
 * # Safety
 * `g` must be a live graph handle and `out_count` a valid pointer.
 */
enum ChhfStatus chhf_graph_hyperplane_count(const struct ChhfGraph *g, size_t *out_count);

/**
 * Writes twice the four-point Gromov hyperbolicity constant.
 *
 * # Safety
 * `g` must be a live graph handle and `out_doubled` a valid pointer.
 */
enum ChhfStatus chhf_graph_gromov_delta_doubled(const struct ChhfGraph *g, uint64_t *out_doubled);

/**
 * Builds the triple of a quasi-median graph: its crossing graph, the
 * minimal factor system and the prism X-graphs. `cap` bounds the number of
 * domains (0 selects the library default).
 *
 * # Safety
 * `g` must be a live graph handle and `out_triple` a valid pointer.
 */
enum ChhfStatus chhf_triple_quasi_median(const struct ChhfGraph *g,
                                         size_t cap,
                                         struct ChhfTriple **out_triple);

/**
 * Builds the triple of an arbitrary graph with W given by intersecting
 * maximal cliques. `cap` bounds the number of domains (0 selects the
 * library default).
 *
 * # Safety
 * `g` must be a live graph handle and `out_triple` a valid pointer.
 */
enum ChhfStatus chhf_triple_generic(const struct ChhfGraph *g,
                                    size_t cap,
                                    struct ChhfTriple **out_triple);

/**
 * Releases a triple. Null is ignored.
 *
 * # Safety
 * `t` must come from this library and must not be used afterwards.
 */
void chhf_triple_free(struct ChhfTriple *t);

/**
 * Number of domains in the factor system, or 0 for null.
 *
 * # Safety
 * `t` must be null or a live triple handle.
 */
size_t chhf_triple_domain_count(const struct ChhfTriple *t);

/**
 * Runs every check on the triple and writes the report as a JSON string,
 * to be released with [`chhf_string_free`]. Returns `AxiomFailed` when the
 * report was produced but some check failed; the string is set either way.
 *
 * # Safety
 * `t` must be a live triple handle and `out_json` a valid pointer.
 */
enum ChhfStatus chhf_full_report_json(const struct ChhfTriple *t, uint64_t seed, char **out_json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void chhf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHHF_H */
