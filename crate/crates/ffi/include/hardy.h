#ifndef HARDY_H
#define HARDY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How a scan record's tuple was found.
 */
typedef enum HardyMethod {
  HARDY_METHOD_GREEDY = 0,
  HARDY_METHOD_EXCHANGE = 1,
  HARDY_METHOD_BRUTE_FORCE = 2,
} HardyMethod;

/**
 * Result code of every call.
 */
typedef enum HardyStatus {
  HARDY_STATUS_OK = 0,
  HARDY_STATUS_INVALID_ARGUMENT = 1,
  HARDY_STATUS_OUTSIDE_DISK = 2,
  HARDY_STATUS_DUPLICATE_POINT = 3,
  HARDY_STATUS_BUDGET_EXCEEDED = 4,
  HARDY_STATUS_ENVELOPE_SUPPORT = 5,
  HARDY_STATUS_INSUFFICIENT_MASS = 6,
  HARDY_STATUS_INVARIANT = 7,
  HARDY_STATUS_DEGENERATE_NODE = 8,
  HARDY_STATUS_IO = 9,
  HARDY_STATUS_PARSE = 10,
  HARDY_STATUS_NULL_POINTER = 11,
  HARDY_STATUS_PANIC = 12,
} HardyStatus;

/**
 * Opaque candidate set.
 */
typedef struct HardyCandidateSet HardyCandidateSet;

/**
 * Opaque scan result.
 */
typedef struct HardyScan HardyScan;

/**
 * One scan record. `n` is the tuple size.
 */
typedef struct HardyRecord {
  size_t n;
  double log_v;
  double mu;
  double log_m;
  uint32_t method;
} HardyRecord;

/**
 * Bounds for one `eps`, natural logs.
 */
typedef struct HardySandwich {
  double eps;
  double r;
  double alpha;
  double k;
  double phi_eps;
  double lower_log;
  double upper_log;
  double upper_certified_log;
  bool lower_exact;
  bool lower_feasible;
} HardySandwich;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hardy_last_error(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *hardy_version(void);

/**
 * Pseudo-hyperbolic distance `|z - w|/|1 - w̄z|`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_pseudo_distance(double z_re,
                                       double z_im,
                                       double w_re,
                                       double w_im,
                                       double *out_d);

/**
 * `α*(R) = ln(2R/(1 + R²))/ln R` for `R ∈ (0, 1)`.
 *
 * # Safety
 * `out_alpha` must be valid for writes.
 */
enum HardyStatus hardy_alpha_star(double r, double *out_alpha);

/**
 * `log|B(Z, z)|` for the zeros `(zeros_re[i], zeros_im[i])`, `i < n`.
 *
 * # Safety
 * The arrays must hold `n` values; `out_log` must be valid for writes.
 */
enum HardyStatus hardy_blaschke_log_abs(const double *zeros_re,
                                        const double *zeros_im,
                                        size_t n,
                                        double z_re,
                                        double z_im,
                                        double *out_log);

/**
 * Harmonic measure at `z` of the union of arcs running counterclockwise
 * from `starts[i]` to `ends[i]`.
 *
 * # Safety
 * The arrays must hold `n_arcs` values; `out_omega` must be valid for writes.
 */
enum HardyStatus hardy_harmonic_omega(const double *starts,
                                      const double *ends,
                                      size_t n_arcs,
                                      double z_re,
                                      double z_im,
                                      double *out_omega);

/**
 * Interpolation coefficients `c_{p,k}(z)` for `n` distinct nodes, written to
 * `out_re[k]`, `out_im[k]`.
 *
 * # Safety
 * All arrays must hold `n` values; the outputs must be writable.
 */
enum HardyStatus hardy_interp_coefficients(const double *nodes_re,
                                           const double *nodes_im,
                                           size_t n,
                                           double p,
                                           double z_re,
                                           double z_im,
                                           double *out_re,
                                           double *out_im);

/**
 * Candidate set from `n` points and `n_vertices` weight vertex angles (unit
 * weight when `n_vertices` is 0).
 *
 * # Safety
 * The arrays must hold the stated number of values; `out_set` must be
 * writable. Release the handle with [`hardy_candidate_set_free`].
 */
enum HardyStatus hardy_candidate_set_new(const double *re,
                                         const double *im,
                                         size_t n,
                                         const double *vertices,
                                         size_t n_vertices,
                                         struct HardyCandidateSet **out_set);

/**
 * Lattice points of spacing `mesh` in `|z| ≤ r`.
 *
 * # Safety
 * `out_set` must be writable.
 */
enum HardyStatus hardy_candidate_set_compact(double r,
                                             double mesh,
                                             struct HardyCandidateSet **out_set);

/**
 * Reads a point file.
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string; `out_set` must be writable.
 */
enum HardyStatus hardy_candidate_set_load(const char *path, struct HardyCandidateSet **out_set);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t hardy_candidate_set_len(const struct HardyCandidateSet *set);

/**
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void hardy_candidate_set_free(struct HardyCandidateSet *set);

/**
 * Extremal tuples for `n = 1..=n_max`. With `exact` every size is
 * enumerated, failing with `BudgetExceeded` when some `C(|E|, n)` exceeds
 * `budget`; otherwise greedy + exchange is used.
 *
 * # Safety
 * `set` must be a live handle; `out_scan` must be writable. Release the
 * result with [`hardy_scan_free`].
 */
enum HardyStatus hardy_scan(const struct HardyCandidateSet *set,
                            size_t n_max,
                            bool exact,
                            uint64_t budget,
                            struct HardyScan **out_scan);

/**
 * Number of records, or 0 for a null handle.
 *
 * # Safety
 * `scan` must be null or a live handle.
 */
size_t hardy_scan_len(const struct HardyScan *scan);

/**
 * Copies record `index` (0-based, tuple size `index + 1`).
 *
 * # Safety
 * `scan` must be a live handle; `out_record` must be writable.
 */
enum HardyStatus hardy_scan_record(const struct HardyScan *scan,
                                   size_t index,
                                   struct HardyRecord *out_record);

/**
 * # Safety
 * `scan` must be null or a handle not yet freed.
 */
void hardy_scan_free(struct HardyScan *scan);

/**
 * Lower and upper bounds for `eps` on `|z| ≤ r`, using `scan` (of the same
 * set) for the envelope.
 *
 * # Safety
 * `set` and `scan` must be live handles; `out_bounds` must be writable.
 */
enum HardyStatus hardy_sandwich(const struct HardyCandidateSet *set,
                                const struct HardyScan *scan,
                                double eps,
                                double r,
                                double p,
                                uint64_t seed,
                                uint64_t budget,
                                struct HardySandwich *out_bounds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARDY_H */
