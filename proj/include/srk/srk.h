/*
 * srk - stochastic Runge-Kutta toolkit
 *
 * C interface of the shared library: opaque handles, integer status
 * codes, explicit free functions. Every function returns SRK_OK (0) on
 * success or a nonzero status; srk_last_error() describes the most
 * recent failure on the calling thread. Strings returned through
 * char** out-parameters are heap-allocated; release them with
 * srk_string_free.
 */

#ifndef SRK_H
#define SRK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srk_status {
  SRK_OK = 0,
  SRK_ERR_INVALID = 1, /* bad input, failed validation */
  SRK_ERR_NUMERIC = 2, /* non-finite state, numerical failure */
  SRK_ERR_IO = 3       /* file system or parse-from-disk failure */
} srk_status;

const char* srk_version(void);

/* Message for the last failure on this thread; empty string if none. */
const char* srk_last_error(void);

void srk_string_free(char* text);

/* ---- coefficient tables ------------------------------------------------ */

typedef struct srk_table srk_table;

srk_status srk_table_load_json(const char* json_text, srk_table** out);
srk_status srk_table_load_file(const char* path, srk_table** out);
srk_status srk_table_bundled(const char* name, srk_table** out);
void srk_table_free(srk_table* table);

/* newline-separated list of bundled table names */
srk_status srk_table_list_bundled(char** out);

const char* srk_table_name(const srk_table* table);
/* "scalar_strong", "vector_strong" or "vector_weak" */
const char* srk_table_kind(const srk_table* table);
int srk_table_stages(const srk_table* table);
/* orders as decimal text, e.g. "1.5" */
srk_status srk_table_orders(const srk_table* table, char** det_order, char** stoch_order);

/* Validation report as text; mandatory_ok is 1 when the mandatory
 * checks (shapes, explicitness, sum(a)=1, sum(b1)=1) all pass. */
srk_status srk_table_validate(const srk_table* table, char** report, int* mandatory_ok);

srk_status srk_table_render_math(const srk_table* table, char** text);
srk_status srk_table_to_json(const srk_table* table, char** json_text);

/* ---- SDE systems and built-in problems ---------------------------------- */

typedef struct srk_system srk_system;

/* Drift fills out[0..d); diffusion fills the row-major d x m matrix
 * out[0..d*m). Callbacks must be safe to invoke from multiple threads. */
typedef void (*srk_drift_fn)(double t, const double* x, double* out, void* user);
typedef void (*srk_diffusion_fn)(double t, const double* x, double* out, void* user);

srk_status srk_system_create(int d, int m, srk_drift_fn drift, srk_diffusion_fn diffusion,
                             void* user, srk_system** out);
void srk_system_free(srk_system* system);

typedef struct srk_problem srk_problem;

/* Built-in analytically solvable problems; spec is a name with optional
 * parameters, e.g. "gbm" or "gbm(mu=0.5,sigma=0.3,x0=1)". */
srk_status srk_problem_create(const char* spec, srk_problem** out);
void srk_problem_free(srk_problem* problem);
srk_status srk_problem_names(char** out);
int srk_problem_dim(const srk_problem* problem);
int srk_problem_noise_dim(const srk_problem* problem);
srk_status srk_problem_initial_state(const srk_problem* problem, double* x0);

/* ---- Wiener paths -------------------------------------------------------- */

typedef struct srk_path srk_path;

srk_status srk_path_generate(uint64_t seed, double t0, double t_end, long steps, int m,
                             srk_path** out);
void srk_path_free(srk_path* path);
long srk_path_steps(const srk_path* path);
int srk_path_noise_dim(const srk_path* path);
/* (steps+1) x m cumulative values, row-major */
srk_status srk_path_cumulative(const srk_path* path, double* out);
srk_status srk_path_write_csv(const srk_path* path, const char* file);
srk_status srk_path_read_csv(const char* file, srk_path** out);

/* ---- trajectories -------------------------------------------------------- */

typedef struct srk_trajectory srk_trajectory;

void srk_trajectory_free(srk_trajectory* trajectory);
long srk_trajectory_steps(const srk_trajectory* trajectory);
int srk_trajectory_dim(const srk_trajectory* trajectory);
/* (steps+1) x d values, row-major */
srk_status srk_trajectory_values(const srk_trajectory* trajectory, double* out);
srk_status srk_trajectory_write_csv(const srk_trajectory* trajectory, const char* file);

/* One sample trajectory. method is "em", a bundled table name or a path
 * to a coefficient JSON file. n_terms <= 0 selects the default series
 * truncation max(1, ceil(1/h)). x0 may be NULL for a problem's default. */
srk_status srk_simulate(const char* method, const srk_problem* problem, const double* x0,
                        double t0, double t_end, long steps, uint64_t seed, int n_terms,
                        srk_trajectory** out);

/* Same, over a user-defined system. Weak methods ignore the path-based
 * coupling and draw their own randomness from seed. */
srk_status srk_simulate_system(const char* method, const srk_system* system, const double* x0,
                               double t0, double t_end, long steps, uint64_t seed, int n_terms,
                               srk_trajectory** out);

/* ---- Monte Carlo --------------------------------------------------------- */

typedef struct srk_mc_result srk_mc_result;

srk_status srk_mc_run(const char* method, const srk_problem* problem, const double* x0,
                      double t0, double t_end, long steps, long trials, int workers,
                      uint64_t seed, int n_terms, srk_mc_result** out);
void srk_mc_result_free(srk_mc_result* result);
long srk_mc_accepted(const srk_mc_result* result);
long srk_mc_rejected(const srk_mc_result* result);
/* (steps+1) x d mean trajectory, row-major */
srk_status srk_mc_mean(const srk_mc_result* result, double* out);
srk_status srk_mc_write_csv(const srk_mc_result* result, const char* file);
/* JSON run metadata (seed, trials, workers, method, h, counts) */
srk_status srk_mc_metadata(const srk_mc_result* result, char** json_text);

/* ---- convergence orders --------------------------------------------------- */

typedef struct srk_order_report srk_order_report;

srk_status srk_estimate_strong_order(const char* method, const char* problem_spec,
                                     const double* hs, int n_hs, long paths, uint64_t seed,
                                     double t_end, srk_order_report** out);
srk_status srk_estimate_weak_order(const char* method, const char* problem_spec,
                                   const char* functional, const double* hs, int n_hs,
                                   long trials, int workers, uint64_t seed, double t_end,
                                   srk_order_report** out);
void srk_order_report_free(srk_order_report* report);
double srk_order_slope(const srk_order_report* report);
/* 1 when the estimate is degenerate (errors at rounding level) */
int srk_order_degenerate(const srk_order_report* report);
/* 1 when Monte Carlo noise is not below the measured bias */
int srk_order_unreliable(const srk_order_report* report);
srk_status srk_order_errors(const srk_order_report* report, double* errors, double* stderrs);
/* CSV report: '# key: value' metadata lines, then h,error,mc_stderr rows */
srk_status srk_order_write_csv(const srk_order_report* report, const char* file);
srk_status srk_order_report_text(const srk_order_report* report, char** csv_text);

/* ---- code generation ------------------------------------------------------ */

/* Emits specialized stepper source for noise dimensions m_min..m_max
 * (scalar tables once), plus registry and manifest, into outdir.
 * tables is a newline-separated list of bundled names and/or JSON file
 * paths; manifest receives the manifest JSON. */
srk_status srk_generate_bundle(const char* tables, int m_min, int m_max, const char* dialect,
                               const char* outdir, char** manifest);

/* Specialized stepper source / formula listing for one (table, m). */
srk_status srk_emit_source(const srk_table* table, int m, const char* dialect, char** source);
srk_status srk_emit_math(const srk_table* table, int m, char** text);

/* newline-separated registered emission dialects */
srk_status srk_dialects(char** out);

#ifdef __cplusplus
}
#endif

#endif /* SRK_H */
