/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef PSTAR_H
#define PSTAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PSTAR_STATUS_OK = 0,
  PSTAR_STATUS_NULL_POINTER = 1,
  PSTAR_STATUS_INVALID_ARGUMENT = 2,
  PSTAR_STATUS_PARSE = 3,
  PSTAR_STATUS_TOO_LARGE = 4,
  /**
   * The solver or ascent failed to converge, diverged, or hit separation.
   */
  PSTAR_STATUS_NUMERICAL = 5,
  /**
   * The parameters are outside the high-temperature phase.
   */
  PSTAR_STATUS_LOW_TEMPERATURE = 6,
  PSTAR_STATUS_IO = 7,
  PSTAR_STATUS_PANIC = 8,
} PstarStatus;

typedef enum {
  PSTAR_PHASE_HIGH = 0,
  PSTAR_PHASE_LOW = 1,
  PSTAR_PHASE_BOUNDARY = 2,
} PstarPhase;

/**
 * Opaque graph handle.
 */
typedef struct PstarGraph PstarGraph;

/**
 * Opaque set of sampled graphs.
 */
typedef struct PstarSampleSet PstarSampleSet;

typedef struct {
  uint64_t edges;
  uint64_t two_stars;
  uint64_t triangles;
} PstarStats;

typedef struct {
  double theta1;
  double theta2;
  double theta3;
} PstarParams;

typedef struct {
  double mu1;
  double mu2;
  double mu3;
} PstarMoments;

typedef struct {
  size_t n;
  size_t num_samples;
  uint64_t burn_in;
  uint64_t thinning;
  uint64_t seed;
  /**
   * Edge probability of the random starting graph; 0 starts empty.
   */
  double initial_density;
} PstarSamplerConfig;

typedef struct {
  double step;
  size_t max_iter;
  PstarParams init;
  /**
   * Stop once the sup-norm of the gradient drops below this; `<= 0`
   * disables early stopping.
   */
  double grad_tol;
} PstarAscentConfig;

typedef struct {
  PstarParams theta;
  size_t iterations;
  bool converged;
  double total_time_ms;
} PstarEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *pstar_last_error(void);

/**
 * Empty graph on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
PstarStatus pstar_graph_new(size_t n, PstarGraph **out);

/**
 * Graph from a row-major `n × n` 0/1 matrix, validated for symmetry and a
 * zero diagonal.
 *
 * # Safety
 * `matrix` must point to `n * n` readable bytes; `out` as in
 * [`pstar_graph_new`].
 */
PstarStatus pstar_graph_from_adjacency(const uint8_t *matrix, size_t n, PstarGraph **out);

/**
 * Parses adjacency-matrix text (the `.adj` file format).
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string; `out` as in
 * [`pstar_graph_new`].
 */
PstarStatus pstar_graph_parse_adjacency(const char *text, PstarGraph **out);

/**
 * Copy of the bundled 16-vertex Florentine business network.
 *
 * # Safety
 * `out` as in [`pstar_graph_new`].
 */
PstarStatus pstar_graph_florentine(PstarGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void pstar_graph_free(PstarGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PstarStatus pstar_graph_num_vertices(const PstarGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PstarStatus pstar_graph_stats(const PstarGraph *g, PstarStats *out);

/**
 * Statistic differences between the graph with pair `(i, j)` present and
 * absent.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PstarStatus pstar_graph_change_stats(const PstarGraph *g, size_t i, size_t j, PstarStats *out);

/**
 * Flips pair `(i, j)` in place. `added` (may be null) receives whether the
 * edge is now present.
 *
 * # Safety
 * `g` must be a live handle; `added` null or writable.
 */
PstarStatus pstar_graph_toggle(PstarGraph *g, size_t i, size_t j, bool *added);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PstarStatus pstar_graph_has_edge(const PstarGraph *g, size_t i, size_t j, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
PstarStatus pstar_graph_degree(const PstarGraph *g, size_t i, size_t *out);

/**
 * High/low-temperature diagnostic. Up to `capacity` fixed points are
 * written to `points` (may be null when `capacity` is 0); `count` receives
 * the total number found.
 *
 * # Safety
 * `p`, `phase` and `count` must be valid; `points` must have room for
 * `capacity` doubles.
 */
PstarStatus pstar_phase(const PstarParams *p,
                        size_t n,
                        PstarPhase *phase,
                        double *points,
                        size_t capacity,
                        size_t *count);

/**
 * Mean-field approximation of the expected statistics.
 *
 * # Safety
 * `p` readable, `out` writable.
 */
PstarStatus pstar_mf_moments(const PstarParams *p, size_t n, PstarMoments *out);

/**
 * Exact expected statistics by enumeration (`n <= 7`).
 *
 * # Safety
 * `p` readable, `out` writable.
 */
PstarStatus pstar_exact_moments(const PstarParams *p, size_t n, PstarMoments *out);

/**
 * Exact log-partition function by enumeration (`n <= 7`).
 *
 * # Safety
 * `p` readable, `out` writable.
 */
PstarStatus pstar_exact_log_partition(const PstarParams *p, size_t n, double *out);

/**
 * Default sampler settings for `n` vertices.
 */
PstarSamplerConfig pstar_sampler_config_default(size_t n, size_t num_samples, uint64_t seed);

/**
 * Runs `chains` seeded Metropolis-Hastings chains, each keeping
 * `num_samples` graphs.
 *
 * # Safety
 * `p` and `cfg` readable; `out` as in [`pstar_graph_new`].
 */
PstarStatus pstar_sample(const PstarParams *p,
                         const PstarSamplerConfig *cfg,
                         size_t chains,
                         PstarSampleSet **out);

/**
 * Dataset from copies of `count` graphs of equal size.
 *
 * # Safety
 * `graphs` must point to `count` live graph handles; `out` as in
 * [`pstar_graph_new`].
 */
PstarStatus pstar_sample_set_from_graphs(const PstarGraph *const *graphs,
                                         size_t count,
                                         PstarSampleSet **out);

/**
 * # Safety
 * `s` must be null or a live sample-set handle.
 */
void pstar_sample_set_free(PstarSampleSet *s);

/**
 * # Safety
 * `s` live, `out` writable.
 */
PstarStatus pstar_sample_set_len(const PstarSampleSet *s, size_t *out);

/**
 * Statistics of sample `index`.
 *
 * # Safety
 * `s` live, `out` writable.
 */
PstarStatus pstar_sample_set_stats(const PstarSampleSet *s, size_t index, PstarStats *out);

/**
 * Per-sample mean of the statistics.
 *
 * # Safety
 * `s` live, `out` writable.
 */
PstarStatus pstar_sample_set_moments(const PstarSampleSet *s, PstarMoments *out);

/**
 * Mean-field maximum-likelihood estimate from empirical moments.
 *
 * # Safety
 * `m` and `cfg` readable, `out` writable.
 */
PstarStatus pstar_estimate_mf(const PstarMoments *m,
                              size_t n,
                              const PstarAscentConfig *cfg,
                              PstarEstimate *out);

/**
 * Maximum pseudo-likelihood estimate from a dataset.
 *
 * # Safety
 * `s` live, `cfg` readable, `out` writable.
 */
PstarStatus pstar_estimate_mple(const PstarSampleSet *s,
                                const PstarAscentConfig *cfg,
                                PstarEstimate *out);

/**
 * Exact maximum-likelihood estimate by enumeration (`n <= 7`).
 *
 * # Safety
 * `m` and `cfg` readable, `out` writable.
 */
PstarStatus pstar_estimate_exact(const PstarMoments *m,
                                 size_t n,
                                 const PstarAscentConfig *cfg,
                                 PstarEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSTAR_H */
