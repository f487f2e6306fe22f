/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GRASSMANN_LAB_H
#define GRASSMANN_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The numbering matches the CLI exit codes for 0 to 3.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  /**
   * A verification ran and found a violation.
   */
  GL_STATUS_CHECK_FAILED = 1,
  /**
   * A size or search budget was exceeded.
   */
  GL_STATUS_RESOURCE_BOUND = 2,
  GL_STATUS_INVALID_INPUT = 3,
  GL_STATUS_NULL_POINTER = 4,
  /**
   * A panic was caught at the boundary.
   */
  GL_STATUS_INTERNAL = 5,
} GlStatus;

typedef enum GlVerdict {
  GL_VERDICT_CORE = 0,
  GL_VERDICT_NOT_CORE = 1,
  GL_VERDICT_UNDETERMINED = 2,
} GlVerdict;

/**
 * Opaque Grassmann graph handle.
 */
typedef struct GlGraph GlGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *gl_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gl_string_free(char *s);

/**
 * Builds J_q(n, m) with default bounds.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_graph_build(uint64_t q, size_t n, size_t m, struct GlGraph **out);

/**
 * Frees a graph. NULL is ignored.
 *
 * # Safety
 * `g` must come from [`gl_graph_build`] and not have been freed.
 */
void gl_graph_free(struct GlGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum GlStatus gl_graph_vertex_count(const struct GlGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum GlStatus gl_graph_is_adjacent(const struct GlGraph *g, size_t x, size_t y, bool *out);

/**
 * Graph distance, m - dim(X ∩ Y).
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum GlStatus gl_graph_distance(const struct GlGraph *g, size_t x, size_t y, size_t *out);

/**
 * Clique number by branch and bound.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for writes.
 */
enum GlStatus gl_graph_omega(const struct GlGraph *g, size_t *out);

/**
 * Checks the star/top intersection lemmas. `all_passed` receives the
 * outcome; the status is `CHECK_FAILED` when a counterexample exists.
 *
 * # Safety
 * `g` must be a live handle and `all_passed` valid for writes.
 */
enum GlStatus gl_graph_verify_lemmas(const struct GlGraph *g, bool *all_passed);

/**
 * Decides whether J_q(n, m) is a core. `json_out` may be NULL; otherwise
 * it receives the full report.
 *
 * # Safety
 * `verdict` must be valid for writes; `json_out` NULL or valid for writes.
 */
enum GlStatus gl_core_test(uint32_t n,
                           uint32_t m,
                           uint64_t q,
                           enum GlVerdict *verdict,
                           char **json_out);

/**
 * Gaussian binomial [n, m] as JSON: cyclotomic factorization, polynomial,
 * and the h(q) analysis when 4 <= 2m <= n. `at` = 0 skips evaluation,
 * `q_max` = 0 skips the scan.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GlStatus gl_qbinom_json(uint32_t n, uint32_t m, uint64_t at, uint64_t q_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRASSMANN_LAB_H */
