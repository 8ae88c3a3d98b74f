/* C API for the areatrap shared library: opaque handles plus integer status
 * codes. Every function returns ATP_OK (0) on success; on failure the return
 * value classifies the error and atp_last_error() carries a message for the
 * calling thread. Handles are created and released by matching atp_*_free
 * calls and are never shared between unrelated calls by the library itself.
 */
#ifndef AREATRAP_CAPI_H
#define AREATRAP_CAPI_H

#include <stdint.h>

#if defined(_WIN32)
#define ATP_API __declspec(dllexport)
#else
#define ATP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atp_status {
    ATP_OK = 0,
    ATP_E_INVALID = 1,         /* bad parameter, order, region or endpoint */
    ATP_E_PARSE = 2,           /* malformed file */
    ATP_E_VALIDATION = 3,      /* well-formed but inconsistent input */
    ATP_E_IO = 4,              /* unreadable/unwritable path */
    ATP_E_INFEASIBLE = 5,      /* no path traps the requested area */
    ATP_E_SIZE_CAP = 6,        /* instance above a solver cap */
    ATP_E_INSUFFICIENT = 7,    /* not enough data (exponent fit) */
    ATP_E_EMPTY_PLOT = 8,      /* nothing to draw */
    ATP_E_ORACLE_MISMATCH = 9, /* production solver disagrees with brute force */
    ATP_E_INTERNAL = 10
} atp_status;

typedef struct atp_cloud atp_cloud;
typedef struct atp_solution atp_solution;

ATP_API const char* atp_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
ATP_API const char* atp_last_error(void);

/* ---- point clouds ---- */

ATP_API int atp_cloud_sample(double n, uint64_t master_seed, uint64_t trial_index,
                             atp_cloud** out);
ATP_API int atp_cloud_load(const char* path, atp_cloud** out);
ATP_API int atp_cloud_save(const atp_cloud* cloud, const char* path);
ATP_API void atp_cloud_free(atp_cloud* cloud);
ATP_API int64_t atp_cloud_count(const atp_cloud* cloud);
ATP_API double atp_cloud_box(const atp_cloud* cloud);
ATP_API uint64_t atp_cloud_seed(const atp_cloud* cloud);

/* ---- constrained solver ---- */

typedef struct atp_solve_options {
    const char* mode;   /* "auto" | "exact" | "lagrangian" */
    double lambda_tol;  /* <= 0 selects the default 1e-6/n */
    int max_bisect;
    int64_t exact_cap;
    double lambda_max;  /* <= 0 selects the default 4/n */
} atp_solve_options;

ATP_API void atp_solve_options_init(atp_solve_options* opts);

/* When the instance is infeasible, returns ATP_E_INFEASIBLE and stores the
 * maximum trappable area in *max_trappable (may be NULL). */
ATP_API int atp_solve(const atp_cloud* cloud, double alpha, const atp_solve_options* opts,
                      atp_solution** out, double* max_trappable);

ATP_API int64_t atp_solution_length(const atp_solution* sol);
ATP_API double atp_solution_area(const atp_solution* sol);
ATP_API double atp_solution_upper_bound(const atp_solution* sol);
ATP_API int64_t atp_solution_gap(const atp_solution* sol);
ATP_API const char* atp_solution_method(const atp_solution* sol);
ATP_API int64_t atp_solution_vertex_count(const atp_solution* sol);
ATP_API int atp_solution_vertex(const atp_solution* sol, int64_t index, double* x, double* y);
ATP_API int atp_solution_save(const atp_solution* sol, const char* path);
ATP_API void atp_solution_free(atp_solution* sol);

/* ---- unconstrained diagnostics ---- */

ATP_API int atp_lpp_length(const atp_cloud* cloud, int64_t* out);

/* ---- limit shape ---- */

ATP_API int atp_limit_shape(double alpha, double* c_out, double* w_out);

/* Writes an `x,psi_x` CSV with `samples` rows spanning [0,1]. */
ATP_API int atp_limit_shape_curve(double alpha, int64_t samples, const char* out_path);

/* ---- experiment harness ---- */

/* Runs one trial of the config and returns the record as a two-line CSV
 * (header plus row) allocated with malloc; release with atp_string_free. */
ATP_API int atp_trial_csv(const char* config_path, uint64_t trial_index, char** csv_out);
ATP_API void atp_string_free(char* s);

/* threads = 0 keeps the config/automatic choice; AREATRAP_THREADS overrides. */
ATP_API int atp_sweep(const char* config_path, const char* out_csv, int threads);

typedef struct atp_fit_result {
    double slope;
    double intercept;
    double stderr_slope;
    double r_squared;
    int64_t points;
} atp_fit_result;

ATP_API int atp_fit(const char* results_csv, const char* field, atp_fit_result* out);

ATP_API int atp_lln_table(const char* results_csv, char** csv_out);

/* kind: "shape" | "exponents" | "lln"; field may be NULL (exponents default
 * to mfl_interior). */
ATP_API int atp_plot(const char* in_csv, const char* kind, const char* field,
                     const char* out_svg);

/* Returns ATP_E_ORACLE_MISMATCH when any production/brute-force comparison
 * fails; *mismatches carries the count (may be NULL). */
ATP_API int atp_oracle_check(int64_t trials, int64_t max_points, uint64_t seed,
                             int64_t* mismatches);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AREATRAP_CAPI_H */
