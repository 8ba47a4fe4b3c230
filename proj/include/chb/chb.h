/* C interface of the Cahn-Hilliard-Biot simulator. All handles are opaque; every function
 * returns a status code and, on failure, leaves a message retrievable with chb_last_error()
 * (per thread, valid until the next failing call on the same thread). */
#ifndef CHB_CHB_H
#define CHB_CHB_H

#include <stddef.h>

#if defined(CHB_BUILDING_LIBRARY)
#define CHB_API __attribute__((visibility("default")))
#else
#define CHB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chb_status {
  CHB_OK = 0,
  CHB_ERR_INVALID_ARGUMENT = 1,
  CHB_ERR_CONFIG = 2,
  CHB_ERR_COEFFICIENT = 3,
  CHB_ERR_SETUP = 4,
  CHB_ERR_SOLVER = 5,
  CHB_ERR_PICARD = 6,
  CHB_ERR_IO = 7,
  CHB_ERR_SIZE = 8,
  CHB_ERR_INTERNAL = 99
} chb_status;

typedef enum chb_field {
  CHB_FIELD_PHI = 0,
  CHB_FIELD_THETA = 1,
  CHB_FIELD_PRESSURE = 2,
  CHB_FIELD_MU = 3,
  CHB_FIELD_UX = 4,
  CHB_FIELD_UY = 5
} chb_field;

typedef struct chb_config chb_config;
typedef struct chb_simulation chb_simulation;

typedef struct chb_diagnostics {
  double t;
  double e_total, e_interface, e_elastic, e_fluid;
  double mass_phi, mass_theta;
  int picard_iters;
  double rho;
  double residual;
  double dt;
} chb_diagnostics;

typedef struct chb_window_info {
  double t_start, dt;
  int picard_iters;
  int shrinks;
  double rho;
} chb_window_info;

CHB_API const char* chb_last_error(void);
CHB_API const char* chb_status_string(chb_status status);

/* Configuration: flat "key = value" text, '#' comments. */
CHB_API chb_status chb_config_parse(const char* text, chb_config** out);
CHB_API chb_status chb_config_load(const char* path, chb_config** out);
CHB_API chb_status chb_config_set(chb_config* cfg, const char* key, const char* value);
/* Writes the resolved configuration. *needed receives the size including the terminating NUL;
 * CHB_ERR_SIZE is returned when cap is smaller (buf may then be NULL). */
CHB_API chb_status chb_config_serialize(const chb_config* cfg, char* buf, size_t cap, size_t* needed);
CHB_API void chb_config_destroy(chb_config* cfg);

CHB_API chb_status chb_simulation_create(const chb_config* cfg, chb_simulation** out);
CHB_API void chb_simulation_destroy(chb_simulation* sim);
/* Advances one window; info may be NULL. */
CHB_API chb_status chb_simulation_step(chb_simulation* sim, chb_window_info* info);
/* Runs to the configured end time. out_dir may be NULL to skip file output. *complete is 1
 * when every window converged; a hard fixed-point failure returns CHB_ERR_PICARD. */
CHB_API chb_status chb_simulation_run(chb_simulation* sim, const char* out_dir, int* complete);
CHB_API chb_status chb_simulation_time(const chb_simulation* sim, double* t);
CHB_API chb_status chb_simulation_grid(const chb_simulation* sim, int* nx, int* ny);
/* Copies nx*ny nodal values (row-major, x fastest). */
CHB_API chb_status chb_simulation_field(const chb_simulation* sim, chb_field field, double* out, size_t len);
CHB_API chb_status chb_simulation_diagnostics(const chb_simulation* sim, chb_diagnostics* out);

/* Dense operator checks on 8x8 grids for the configured material. Writes the text table into
 * buf (same size protocol as chb_config_serialize) and, if out_dir is given, oracle.csv. */
CHB_API chb_status chb_oracle_report(const chb_config* cfg, const char* out_dir, char* buf, size_t cap,
                                     size_t* needed, int* all_pass);
/* Convergence studies (heat reduction in space and time, elasticity and residual manufactured
 * solutions) as a text table. */
CHB_API chb_status chb_mms_report(char* buf, size_t cap, size_t* needed, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
