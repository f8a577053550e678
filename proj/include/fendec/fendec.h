/* fendec: two-stage stochastic integer programs by stage-wise Fenchel
 * decomposition.
 *
 * Every object is an opaque handle released by its own *_free function.
 * Functions returning fendec_status leave a message for fendec_last_error()
 * on failure; the message is per thread and valid until the next failing
 * call on that thread. Getters that fill a caller buffer return the full
 * length and write at most `cap` entries. */
#ifndef FENDEC_FENDEC_H
#define FENDEC_FENDEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FENDEC_BUILDING_LIBRARY)
#    define FENDEC_API __declspec(dllexport)
#  else
#    define FENDEC_API __declspec(dllimport)
#  endif
#else
#  define FENDEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fendec_instance fendec_instance;
typedef struct fendec_report fendec_report;
typedef struct fendec_isg_trace fendec_isg_trace;

typedef enum fendec_status {
  FENDEC_OK = 0,
  FENDEC_ERR_INVALID_ARGUMENT = 1,
  FENDEC_ERR_IO = 2,
  FENDEC_ERR_PARSE = 3,
  FENDEC_ERR_VALIDATION = 4,
  FENDEC_ERR_INTERNAL = 5
} fendec_status;

typedef enum fendec_algorithm {
  FENDEC_ALG_SFD = 0,
  FENDEC_ALG_SFD_R = 1, /* with integer set reduction */
  FENDEC_ALG_DIRECT = 2 /* branch and bound on the deterministic equivalent */
} fendec_algorithm;

typedef enum fendec_solve_status {
  FENDEC_SOLVE_OPTIMAL = 0,
  FENDEC_SOLVE_BUDGET = 1,
  FENDEC_SOLVE_FAILED = 2
} fendec_solve_status;

FENDEC_API const char* fendec_version(void);
FENDEC_API const char* fendec_last_error(void);
FENDEC_API const char* fendec_status_string(fendec_status s);
FENDEC_API const char* fendec_algorithm_string(fendec_algorithm a);

/* Instances */

typedef struct fendec_dims {
  size_t n1, n2, m1, m2, scenarios;
} fendec_dims;

typedef struct fendec_gen_config {
  size_t n1, n2, m1, m2, scenarios;
  double v_ub;
  double m_const;
  uint64_t seed;
  char rep; /* replication tag, 'a'..'z' */
} fendec_gen_config;

FENDEC_API void fendec_gen_config_default(fendec_gen_config* cfg);
FENDEC_API fendec_status fendec_generate(const fendec_gen_config* cfg, fendec_instance** out);
FENDEC_API fendec_status fendec_instance_read(const char* path, fendec_instance** out);
/* name may be NULL. */
FENDEC_API fendec_status fendec_instance_parse(const char* text, const char* name,
                                               fendec_instance** out);
FENDEC_API fendec_status fendec_instance_write(const fendec_instance* inst, const char* path);
FENDEC_API void fendec_instance_free(fendec_instance* inst);

FENDEC_API const char* fendec_instance_name(const fendec_instance* inst);
FENDEC_API fendec_status fendec_instance_dims(const fendec_instance* inst, fendec_dims* out);
/* Counts findings; FENDEC_ERR_VALIDATION when any is an error. */
FENDEC_API fendec_status fendec_instance_validate(const fendec_instance* inst, size_t* errors,
                                                  size_t* warnings);
FENDEC_API fendec_status fendec_instance_dep_shape(const fendec_instance* inst, size_t* rows,
                                                   size_t* cols);

/* Solving */

typedef struct fendec_solve_options {
  double eps;
  double time_limit_seconds;  /* <= 0 or infinity: none */
  size_t iteration_limit;     /* master solves (SFD) or nodes (DIRECT); 0: none */
  int l1_domain;              /* Fenchel coefficients in the L1 ball instead of the box */
  int verify_reduced_cuts;
  int keep_fcg_trajectories;
} fendec_solve_options;

typedef struct fendec_report_summary {
  fendec_algorithm algorithm;
  fendec_solve_status status;
  size_t mips_solved;
  size_t fenchel_cuts;
  double lb;
  double ub;
  double gap_pct;
  double wall_seconds;
  size_t iterations;
  size_t no_cut_events;
  size_t lifted_cuts;
  size_t exact_fallbacks;
} fendec_report_summary;

FENDEC_API void fendec_solve_options_default(fendec_solve_options* opt);
/* opt may be NULL for defaults. */
FENDEC_API fendec_status fendec_solve(const fendec_instance* inst, fendec_algorithm alg,
                                      const fendec_solve_options* opt, fendec_report** out);
FENDEC_API void fendec_report_free(fendec_report* rep);

FENDEC_API fendec_status fendec_report_get_summary(const fendec_report* rep,
                                                   fendec_report_summary* out);
FENDEC_API const char* fendec_report_message(const fendec_report* rep);
FENDEC_API size_t fendec_report_first_stage(const fendec_report* rep, double* buf, size_t cap);
FENDEC_API size_t fendec_report_scenario_cuts(const fendec_report* rep, size_t* buf, size_t cap);
FENDEC_API size_t fendec_report_fcg_trace_count(const fendec_report* rep);
/* Bounds (l, u) of trajectory `index`; returns its length. */
FENDEC_API size_t fendec_report_fcg_trace(const fendec_report* rep, size_t index,
                                          size_t* scenario, int* converged, double* l, double* u,
                                          size_t cap);

/* Integer set generation */

typedef enum fendec_isg_action {
  FENDEC_ISG_KEEP = 0,
  FENDEC_ISG_LOWER_I = 1,
  FENDEC_ISG_LOWER_J = 2,
  FENDEC_ISG_INTEGER_POINT = 3
} fendec_isg_action;

typedef struct fendec_isg_step {
  size_t i, j, k;
  double d;
  fendec_isg_action action;
} fendec_isg_step;

/* W is m x n row-major. lookahead = 0 keeps only the distance rule. */
FENDEC_API fendec_status fendec_isg_run(size_t m, size_t n, const double* W, const double* tau,
                                        const double* u, const double* yhat, int lookahead,
                                        fendec_isg_trace** out);
FENDEC_API void fendec_isg_trace_free(fendec_isg_trace* trace);
FENDEC_API size_t fendec_isg_trace_ybar(const fendec_isg_trace* trace, double* buf, size_t cap);
FENDEC_API size_t fendec_isg_trace_step_count(const fendec_isg_trace* trace);
FENDEC_API fendec_status fendec_isg_trace_step(const fendec_isg_trace* trace, size_t index,
                                               fendec_isg_step* out);
/* ybar after step `index`. */
FENDEC_API size_t fendec_isg_trace_step_ybar(const fendec_isg_trace* trace, size_t index,
                                             double* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* FENDEC_FENDEC_H */
