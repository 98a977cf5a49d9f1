#ifndef RDSS_H
#define RDSS_H

/* Generated by cbindgen from the rdss-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call.
typedef enum RdssStatus {
  // The call succeeded.
  RDSS_STATUS_OK = 0,
  // A required pointer argument was null.
  RDSS_STATUS_NULL_ARGUMENT = 1,
  // Input failed to parse or violated a precondition.
  RDSS_STATUS_INVALID_INPUT = 2,
  // The time budget ran out before the search finished.
  RDSS_STATUS_BUDGET = 3,
  // The requested computation exceeds the configured space cap.
  RDSS_STATUS_SPACE = 4,
  // An internal invariant failed; the handle state is unchanged.
  RDSS_STATUS_INTERNAL = 5,
} RdssStatus;

// Opaque codebook over a fixed alphabet.
typedef struct RdssCodebook RdssCodebook;

// Opaque directed side-information graph.
typedef struct RdssGraph RdssGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer is
// owned by the library and stays valid until the next failing call on
// the same thread; never free it.
const char *rdss_last_error_message(void);

// Releases a string handed out through a `char **` out parameter.
//
// # Safety
// `s` must be null or a pointer previously returned by this library
// and not yet freed.
void rdss_string_free(char *s);

// Parses a graph from its text format ("n m" header plus one 1-based
// "v w" edge line per arc) into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be a valid
// pointer.
enum RdssStatus rdss_graph_parse(const char *text, struct RdssGraph **out);

// Builds a named family graph: "cycle", "complete", "empty" (using
// `n`), or "fig1" (fixed five vertices, `n` ignored).
//
// # Safety
// `family` must be a valid NUL-terminated string; `out` must be a
// valid pointer.
enum RdssStatus rdss_graph_family(const char *family, size_t n, struct RdssGraph **out);

// Releases a graph handle.
//
// # Safety
// `g` must be null or an unfreed handle from this library.
void rdss_graph_free(struct RdssGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a valid handle.
size_t rdss_graph_vertex_count(const struct RdssGraph *g);

// Serializes a graph back to its text format.
//
// # Safety
// `g` must be a valid handle; `out` must be a valid pointer.
enum RdssStatus rdss_graph_to_string(const struct RdssGraph *g, char **out);

// Parses a codebook from its text format ("n q count" header plus one
// word per line).
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be a valid
// pointer.
enum RdssStatus rdss_codebook_parse(const char *text, struct RdssCodebook **out);

// Releases a codebook handle.
//
// # Safety
// `c` must be null or an unfreed handle from this library.
void rdss_codebook_free(struct RdssCodebook *c);

// Number of words, or 0 for a null handle.
//
// # Safety
// `c` must be null or a valid handle.
uint64_t rdss_codebook_len(const struct RdssCodebook *c);

// Serializes a codebook back to its text format.
//
// # Safety
// `c` must be a valid handle; `out` must be a valid pointer.
enum RdssStatus rdss_codebook_to_string(const struct RdssCodebook *c, char **out);

// Checks whether every pair of codebook words is non-confusable on the
// graph, writing the verdict to `out`.
//
// # Safety
// `g` and `c` must be valid handles; `out` must be a valid pointer.
enum RdssStatus rdss_codebook_is_valid(const struct RdssGraph *g,
                                       const struct RdssCodebook *c,
                                       bool *out);

// Branch-and-bound search for a maximum storage code. Writes the
// witness codebook to `out` and whether the search finished
// exhaustively to `exact_out`.
//
// # Safety
// `g` must be a valid handle; `out` and `exact_out` must be valid
// pointers.
enum RdssStatus rdss_exact_search(const struct RdssGraph *g,
                                  uint32_t q,
                                  uint64_t max_space,
                                  uint64_t time_budget_ms,
                                  struct RdssCodebook **out,
                                  bool *exact_out);

// Minimum rank over F_q of any matrix fitting the graph, by exhaustive
// enumeration. Requires q prime.
//
// # Safety
// `g` must be a valid handle; `rank_out` must be a valid pointer.
enum RdssStatus rdss_minrank(const struct RdssGraph *g,
                             uint32_t q,
                             uint64_t max_space,
                             uint64_t time_budget_ms,
                             uint32_t *rank_out);

// Full two-sided report (search, minrank, covers, verdicts) as the
// line-oriented `key = value` text. `p` lifts the alphabet to q^p;
// pass 1 for the scalar report.
//
// # Safety
// `g` must be a valid handle; `out` must be a valid pointer.
enum RdssStatus rdss_report(const struct RdssGraph *g,
                            uint32_t q,
                            uint32_t p,
                            uint64_t max_space,
                            uint64_t time_budget_ms,
                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RDSS_H */
