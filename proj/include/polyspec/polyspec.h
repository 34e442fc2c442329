/* polyspec: eigenvalue lower-bound verification toolkit.
 *
 * C interface over the C++ core: opaque handles, integer status codes,
 * thread-local error messages. Strings returned through char** outputs are
 * owned by the caller and released with polyspec_string_free().
 */
#ifndef POLYSPEC_H
#define POLYSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define POLYSPEC_API __declspec(dllexport)
#else
#define POLYSPEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum polyspec_status {
  POLYSPEC_OK = 0,
  POLYSPEC_ERR_INVALID = 1,        /* bad arguments, config or file contents */
  POLYSPEC_ERR_BOUND_VIOLATION = 2,/* a verified inequality failed; refine */
  POLYSPEC_ERR_SOLVER = 3,         /* eigensolver did not converge */
  POLYSPEC_ERR_IO = 4              /* unreadable/unwritable path */
} polyspec_status;

typedef struct polyspec_domain polyspec_domain;
typedef struct polyspec_spectrum polyspec_spectrum;

/* Library version string, static storage. */
POLYSPEC_API const char* polyspec_version(void);

/* Message for the last failure on this thread, static storage. */
POLYSPEC_API const char* polyspec_last_error(void);

POLYSPEC_API void polyspec_string_free(char* s);

/* ---- domains & geometry ---- */

/* Parse {"kind":"interval"|"box"|"ball"|"mask", ...}; mask files resolve
 * relative to base_dir (may be NULL). */
POLYSPEC_API polyspec_status polyspec_domain_from_json(const char* json, const char* base_dir,
                                                       polyspec_domain** out);
POLYSPEC_API void polyspec_domain_free(polyspec_domain* d);

typedef struct polyspec_geometry {
  double volume;
  double centroid[3];
  double inertia;           /* about the centroid */
  double rearranged_radius; /* (V/B_n)^(1/n) */
  double quad_tolerance;    /* 0 on the analytic path */
  int dim;
} polyspec_geometry;

/* resolution <= 0 selects the analytic path (interval/box/ball only). */
POLYSPEC_API polyspec_status polyspec_measure(const polyspec_domain* d, double resolution,
                                              polyspec_geometry* out);

POLYSPEC_API polyspec_status polyspec_unit_ball_volume(int n, double* out);
POLYSPEC_API polyspec_status polyspec_inertia_floor(int n, double volume, double* out);

/* ---- closed-form bounds ---- */

typedef enum polyspec_bound_kind {
  POLYSPEC_BOUND_ASYMPTOTIC_AVERAGE = 0,
  POLYSPEC_BOUND_ASYMPTOTIC_INDIVIDUAL = 1,
  POLYSPEC_BOUND_CLASSICAL_AVERAGE = 2, /* Levine-Protter */
  POLYSPEC_BOUND_INDIVIDUAL_KTH = 3,
  POLYSPEC_BOUND_POLYA = 4,             /* l = 1 */
  POLYSPEC_BOUND_MELAS = 5,             /* l = 1 */
  POLYSPEC_BOUND_THEOREM1 = 6           /* improved average bound, any l */
} polyspec_bound_kind;

POLYSPEC_API polyspec_status polyspec_bound_eval(polyspec_bound_kind kind, int n, int l, double volume,
                                                 double inertia, uint64_t k, double* out);

/* ---- spectra ---- */

/* count smallest eigenvalues of the order-l zero-extension operator at cell
 * size h. */
POLYSPEC_API polyspec_status polyspec_solve(const polyspec_domain* d, double h, int l, int count,
                                            int want_vectors, polyspec_spectrum** out);
POLYSPEC_API void polyspec_spectrum_free(polyspec_spectrum* s);
POLYSPEC_API polyspec_status polyspec_spectrum_values(const polyspec_spectrum* s, double* buffer,
                                                      size_t capacity, size_t* count);
POLYSPEC_API polyspec_status polyspec_spectrum_to_json(const polyspec_spectrum* s, char** out);

/* (2^order fine - coarse)/(2^order - 1); fine must halve the coarse h. */
POLYSPEC_API polyspec_status polyspec_richardson(const polyspec_spectrum* coarse,
                                                 const polyspec_spectrum* fine, double order,
                                                 polyspec_spectrum** out);

/* Closed-form reference spectra: shape is "interval" (l=1), "beam" (l=2) or
 * "disk" (l=1); size is the length or radius. */
POLYSPEC_API polyspec_status polyspec_reference_spectrum(const char* shape, double size, int l,
                                                         int count, double* buffer);

/* ---- verification runs ---- */

/* Full configuration-driven run. Writes report files into out_dir when it is
 * non-NULL (formats: comma-separated csv,json,gnuplot; NULL means json).
 * summary_json receives the report JSON when non-NULL. Returns
 * POLYSPEC_ERR_BOUND_VIOLATION / POLYSPEC_ERR_SOLVER on failed runs. */
POLYSPEC_API polyspec_status polyspec_run_report(const char* config_json, const char* base_dir,
                                                 const char* out_dir, const char* formats,
                                                 char** summary_json);

/* Fuzz campaign for the decreasing-profile moment inequality. options_json
 * may be NULL or {"seeds":n,"b_grid":[...],"l_max":n,"eta":x,"psi0":x,
 * "support":x,"pieces":n}. Violations turn the status into
 * POLYSPEC_ERR_BOUND_VIOLATION. */
POLYSPEC_API polyspec_status polyspec_lemma_fuzz(const char* options_json, char** summary_json);

/* Fourier-side checks of a run config (pointwise bounds, truncated Parseval,
 * moment identities, rearrangement chain). Z/dz <= 0 pick the config values. */
POLYSPEC_API polyspec_status polyspec_fourier_check(const char* config_json, const char* base_dir,
                                                    double Z, double dz, char** summary_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLYSPEC_H */
