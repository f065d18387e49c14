/* C interface to the dcmoreau library.
 *
 * Objects are opaque handles created by dcm_*_create functions and released
 * with the matching dcm_*_free (which accept NULL). Every fallible call
 * returns a dcm_status; on failure dcm_last_error() describes the problem
 * for the calling thread. Matrices are dense, row-major.
 */
#ifndef DCMOREAU_H
#define DCMOREAU_H

#include <stddef.h>
#include <stdint.h>

#if defined(DCM_BUILDING_LIBRARY)
#define DCM_API __attribute__((visibility("default")))
#else
#define DCM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcm_status {
  DCM_OK = 0,
  DCM_INVALID_ARGUMENT = 1,
  DCM_NOT_SYMMETRIC = 2,
  DCM_EIGENVALUE_OUT_OF_RANGE = 3,
  DCM_NOT_POSITIVE_DEFINITE = 4,
  DCM_DIMENSION_MISMATCH = 5,
  DCM_SINGULAR_SYSTEM = 6,
  DCM_INNER_SOLVER_DIVERGED = 7,
  DCM_MISSING_ORACLES = 8,
  DCM_NOT_ADMISSIBLE = 9,
  DCM_ADMISSIBILITY_VIOLATION = 10,
  DCM_UNKNOWN_SUITE = 11,
  DCM_CONFIG_PARSE = 12,
  DCM_IO = 13,
  DCM_DIMENSION_TOO_LARGE = 14,
  DCM_DOMAIN_MISMATCH = 15,
  DCM_INTERNAL = 99
} dcm_status;

typedef struct dcm_metric dcm_metric;
typedef struct dcm_function dcm_function;
typedef struct dcm_problem dcm_problem;
typedef struct dcm_objective dcm_objective;
typedef struct dcm_result dcm_result;

DCM_API const char* dcm_version(void);
/* Message of the last failed call on this thread ("" if none). */
DCM_API const char* dcm_last_error(void);
DCM_API const char* dcm_status_name(dcm_status status);

/* Metric matrices: SPD with eigenvalues in [1/m, m]. */
DCM_API dcm_status dcm_metric_certify(const double* entries, size_t dim, double m,
                                      dcm_metric** out);
DCM_API void dcm_metric_free(dcm_metric* metric);
DCM_API size_t dcm_metric_dim(const dcm_metric* metric);
DCM_API dcm_status dcm_metric_norm_sq(const dcm_metric* metric, const double* x, double* out);

/* Catalog functions. */
DCM_API dcm_status dcm_function_abs(dcm_function** out);
DCM_API dcm_status dcm_function_abs_cubed(dcm_function** out);
DCM_API dcm_status dcm_function_l1(size_t dim, dcm_function** out);
DCM_API dcm_status dcm_function_zero(size_t dim, dcm_function** out);
/* 0.5 |A w - b|^2 with A of shape rows x cols. */
DCM_API dcm_status dcm_function_quadratic(const double* a, size_t rows, size_t cols,
                                          const double* b, dcm_function** out);
DCM_API dcm_status dcm_function_box(const double* lo, const double* hi, size_t dim,
                                    dcm_function** out);
DCM_API void dcm_function_free(dcm_function* func);
DCM_API size_t dcm_function_dim(const dcm_function* func);
DCM_API dcm_status dcm_function_eval(const dcm_function* func, const double* x, double* out);

/* Metric prox and envelope value. Either output may be NULL. */
DCM_API dcm_status dcm_prox(const dcm_function* func, double lambda, const dcm_metric* metric,
                            const double* x, double* point_out, double* envelope_out);

/* Phi = g - f. Functions are copied; the caller keeps ownership. */
DCM_API dcm_status dcm_problem_create(const dcm_function* g, const dcm_function* f,
                                      dcm_problem** out);
/* |x|^3 - |x|. */
DCM_API dcm_status dcm_problem_example1(dcm_problem** out);
DCM_API void dcm_problem_free(dcm_problem* problem);
DCM_API dcm_status dcm_problem_phi(const dcm_problem* problem, const double* x, double* out);

DCM_API dcm_status dcm_objective_create(const dcm_problem* problem, double lambda, double mu,
                                        const dcm_metric* d1, const dcm_metric* d2, double m,
                                        dcm_objective** out);
DCM_API void dcm_objective_free(dcm_objective* obj);
DCM_API size_t dcm_objective_dim(const dcm_objective* obj);
DCM_API double dcm_objective_eta(const dcm_objective* obj);
DCM_API double dcm_objective_eta1(const dcm_objective* obj);
DCM_API dcm_status dcm_objective_value(const dcm_objective* obj, const double* x, double* out);
DCM_API dcm_status dcm_objective_gradient(const dcm_objective* obj, const double* x,
                                          double* grad_out);
/* Fails with DCM_NOT_ADMISSIBLE unless lambda >= m^2 mu. */
DCM_API dcm_status dcm_objective_sandwich(const dcm_objective* obj, const double* x,
                                          double* lower, double* upper);

typedef enum dcm_algorithm { DCM_ALGO_GD = 0, DCM_ALGO_INERTIAL = 1 } dcm_algorithm;
typedef enum dcm_theta_kind {
  DCM_THETA_MAX_ADMISSIBLE = 0,
  DCM_THETA_CONSTANT = 1,
  DCM_THETA_ZERO = 2
} dcm_theta_kind;
typedef enum dcm_stop_mode { DCM_STOP_STEP_NORM = 0, DCM_STOP_GRAD_GAP_NORM = 1 } dcm_stop_mode;
typedef enum dcm_solver_status {
  DCM_SOLVER_CONVERGED = 0,
  DCM_SOLVER_MAX_ITER = 1,
  DCM_SOLVER_INNER_FAILURE = 2
} dcm_solver_status;

typedef struct dcm_solver_options {
  dcm_algorithm algo;
  double gamma;
  double gamma_n;
  dcm_theta_kind theta_kind;
  double theta_value;
  double tol;
  int64_t max_iter;
  dcm_stop_mode stop_mode;
  int64_t trace_thinning;
  int record_trace;
} dcm_solver_options;

/* Gradient descent, gamma 1.8, gamma_n 0.99, tol 1e-4, max_iter 1e6. */
DCM_API void dcm_solver_options_default(dcm_solver_options* opts);

/* x1 may be NULL (defaults to x0). */
DCM_API dcm_status dcm_solve(const dcm_objective* obj, const dcm_solver_options* opts,
                             const double* x0, const double* x1, dcm_result** out);
DCM_API void dcm_result_free(dcm_result* result);
DCM_API dcm_solver_status dcm_result_status(const dcm_result* result);
DCM_API int64_t dcm_result_iterations(const dcm_result* result);
DCM_API dcm_status dcm_result_final_x(const dcm_result* result, double* x_out);
DCM_API size_t dcm_result_trace_length(const dcm_result* result);
/* Monitors: nonzero when the corresponding check held for the whole run. */
DCM_API int dcm_result_descent_ok(const dcm_result* result);
DCM_API int dcm_result_monotone_ok(const dcm_result* result);
DCM_API int dcm_result_rate_ok(const dcm_result* result);
DCM_API dcm_status dcm_result_write_trace(const dcm_result* result, const char* path);

/* Command entry points used by the CLI; they print to stdout/stderr and
 * return a process exit code. out_dir may be NULL or "" for the current
 * directory; workers <= 0 keeps the config's value. */
DCM_API int dcm_cmd_solve(const char* config_path, const char* out_dir);
DCM_API int dcm_cmd_reproduce(int table, const char* out_dir);
DCM_API int dcm_cmd_sweep(const char* config_path, const char* out_dir, int workers);
DCM_API int dcm_cmd_validate(const char* suite, uint64_t seed, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* DCMOREAU_H */
