/* C interface of the crawlfv finite-volume solver.
 *
 * Every function returns a crawlfv_status. On failure a message is kept in
 * thread-local storage and can be read with crawlfv_last_error() until the
 * next failing call on the same thread. Handles are opaque and must be
 * released with the matching *_free function; passing NULL to a free
 * function is allowed.
 *
 * Array layouts: c_tilde holds N_r * N_theta values at k + j * N_theta
 * (0-based ring j, angular cell k); mu_tilde holds N_theta values.
 */
#ifndef CRAWLFV_CRAWLFV_H
#define CRAWLFV_CRAWLFV_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CRAWLFV_BUILDING)
#    define CRAWLFV_API __declspec(dllexport)
#  else
#    define CRAWLFV_API __declspec(dllimport)
#  endif
#else
#  define CRAWLFV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crawlfv_status {
  CRAWLFV_OK = 0,
  CRAWLFV_ERR_NULL = 1,       /* required pointer argument was NULL */
  CRAWLFV_ERR_VALIDATION = 2, /* bad configuration, argument or input file */
  CRAWLFV_ERR_SOLVER = 3,     /* singular system, divergence, non-finite state */
  CRAWLFV_ERR_IO = 4,         /* output could not be written */
  CRAWLFV_ERR_BUFFER = 5,     /* caller buffer too small; size reported */
  CRAWLFV_ERR_INTERNAL = 6
} crawlfv_status;

typedef enum crawlfv_boundary_mode {
  CRAWLFV_BOUNDARY_PAPER = 0, /* ghost cells one step outside the annulus */
  CRAWLFV_BOUNDARY_FACE = 1   /* data imposed on the circles themselves */
} crawlfv_boundary_mode;

CRAWLFV_API const char* crawlfv_version(void);
CRAWLFV_API const char* crawlfv_status_string(crawlfv_status status);
/* Message of the last failure on this thread ("" if none). */
CRAWLFV_API const char* crawlfv_last_error(void);
/* Name of the underlying error kind, e.g. "UnknownKey" ("" if none). */
CRAWLFV_API const char* crawlfv_last_error_kind(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct crawlfv_config crawlfv_config;

CRAWLFV_API crawlfv_status crawlfv_config_create(crawlfv_config** out);
CRAWLFV_API crawlfv_status crawlfv_config_load(const char* path, crawlfv_config** out);
CRAWLFV_API crawlfv_status crawlfv_config_parse(const char* text, crawlfv_config** out);
CRAWLFV_API crawlfv_status crawlfv_config_clone(const crawlfv_config* config,
                                                crawlfv_config** out);
CRAWLFV_API crawlfv_status crawlfv_config_set(crawlfv_config* config, const char* key,
                                              const char* value);
/* Copies the value (NUL-terminated) into buf. *needed, if given, receives
 * the required size including the terminator. */
CRAWLFV_API crawlfv_status crawlfv_config_get(const crawlfv_config* config, const char* key,
                                              char* buf, size_t cap, size_t* needed);
/* Full configuration in key = value form. */
CRAWLFV_API crawlfv_status crawlfv_config_to_string(const crawlfv_config* config, char* buf,
                                                    size_t cap, size_t* needed);
CRAWLFV_API crawlfv_status crawlfv_config_validate(const crawlfv_config* config);
CRAWLFV_API void crawlfv_config_free(crawlfv_config* config);

/* ---- step-by-step simulation ------------------------------------------ */

typedef struct crawlfv_sim crawlfv_sim;

typedef struct crawlfv_step_info {
  long step;
  double t;
  double mass;
  double v_x;
  double v_y;
  double polarization;
  double cfl;
  double residual_pressure;
  double residual_transport;
} crawlfv_step_info;

/* Builds the operators and the configured initial state. Nothing is written. */
CRAWLFV_API crawlfv_status crawlfv_sim_create(const crawlfv_config* config, crawlfv_sim** out);
CRAWLFV_API crawlfv_status crawlfv_sim_dims(const crawlfv_sim* sim, int* n_r, int* n_theta);
CRAWLFV_API crawlfv_status crawlfv_sim_step(crawlfv_sim* sim, long n_steps);
/* Diagnostics of the current state (numerics of the step that produced it). */
CRAWLFV_API crawlfv_status crawlfv_sim_info(const crawlfv_sim* sim, crawlfv_step_info* out);
CRAWLFV_API crawlfv_status crawlfv_sim_get_state(const crawlfv_sim* sim, double* c_tilde,
                                                 size_t n_c, double* mu_tilde, size_t n_mu);
/* Replaces the state; time and step counter are kept. */
CRAWLFV_API crawlfv_status crawlfv_sim_set_state(crawlfv_sim* sim, const double* c_tilde,
                                                 size_t n_c, const double* mu_tilde,
                                                 size_t n_mu);
CRAWLFV_API crawlfv_status crawlfv_sim_mass(const crawlfv_sim* sim, double* mass);
CRAWLFV_API crawlfv_status crawlfv_sim_velocity(const crawlfv_sim* sim, double* v_x,
                                                double* v_y);
CRAWLFV_API void crawlfv_sim_free(crawlfv_sim* sim);

/* ---- whole runs and checks -------------------------------------------- */

typedef struct crawlfv_run_summary {
  long steps;
  int steady_reached;
  double t_steady;  /* valid when steady_reached */
  double pol_steady; /* valid when steady_reached */
  double final_polarization;
  double max_mass_drift;
  double max_cfl;
  long cfl_warnings; /* steps with advective CFL number above 1 */
} crawlfv_run_summary;

/* Full run with outputs as configured (meta.txt, snapshots, timeseries.csv). */
CRAWLFV_API crawlfv_status crawlfv_run(const crawlfv_config* config, crawlfv_run_summary* out);

typedef struct crawlfv_sweep_summary {
  size_t n_runs;
  size_t n_ok;      /* reached a steady state */
  size_t n_failed;  /* failed or skipped */
} crawlfv_sweep_summary;

/* Runs the dr_list x dt_list x kon_list product and writes sweep.csv in
 * the output directory. */
CRAWLFV_API crawlfv_status crawlfv_sweep(const crawlfv_config* config,
                                         crawlfv_sweep_summary* out);

typedef struct crawlfv_poisson_level {
  int n_r;
  double dr;
  double error;
} crawlfv_poisson_level;

/* Convergence study against the analytic radial solution using R_min, R,
 * k_d and poisson_levels from the configuration. levels receives up to cap
 * entries; *n_levels the number of levels. */
CRAWLFV_API crawlfv_status crawlfv_poisson_check(const crawlfv_config* config,
                                                 crawlfv_boundary_mode mode,
                                                 crawlfv_poisson_level* levels, size_t cap,
                                                 size_t* n_levels, double* observed_order);

typedef struct crawlfv_mass_summary {
  long steps;
  double initial_mass;
  double final_mass;
  double max_relative_drift;
} crawlfv_mass_summary;

/* steps < 0 uses mass_check_steps from the configuration. */
CRAWLFV_API crawlfv_status crawlfv_mass_check(const crawlfv_config* config, long steps,
                                              crawlfv_mass_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* CRAWLFV_CRAWLFV_H */
