/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "dcmoreau/dcmoreau.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static int close_to(double a, double b, double tol) { return fabs(a - b) <= tol; }

static void test_metric(void) {
  const double good[4] = {1.5, 0.2, 0.2, 1.0};
  const double asym[4] = {1.0, 0.3, 0.0, 1.0};
  const double big[1] = {3.0};
  dcm_metric* m = NULL;
  EXPECT(dcm_metric_certify(good, 2, 2.0, &m) == DCM_OK);
  EXPECT(m != NULL);
  EXPECT(dcm_metric_dim(m) == 2);
  const double x[2] = {1.0, 0.0};
  double n = 0.0;
  EXPECT(dcm_metric_norm_sq(m, x, &n) == DCM_OK);
  EXPECT(close_to(n, 1.5, 1e-15));
  dcm_metric_free(m);

  m = NULL;
  EXPECT(dcm_metric_certify(asym, 2, 2.0, &m) == DCM_NOT_SYMMETRIC);
  EXPECT(m == NULL);
  EXPECT(strlen(dcm_last_error()) > 0);
  EXPECT(dcm_metric_certify(big, 1, 2.0, &m) == DCM_EIGENVALUE_OUT_OF_RANGE);
  EXPECT(strcmp(dcm_status_name(DCM_OK), "ok") == 0);
  EXPECT(strcmp(dcm_status_name((dcm_status)57), "unknown") == 0);
  EXPECT(dcm_metric_certify(NULL, 1, 2.0, &m) == DCM_INVALID_ARGUMENT);
  dcm_metric_free(NULL);
}

static void test_functions(void) {
  const double one[1] = {1.0};
  dcm_metric* d = NULL;
  EXPECT(dcm_metric_certify(one, 1, 1.0, &d) == DCM_OK);

  dcm_function* g = NULL;
  EXPECT(dcm_function_abs_cubed(&g) == DCM_OK);
  EXPECT(dcm_function_dim(g) == 1);
  double point = 0.0, env = 0.0;
  const double x[1] = {1.0};
  EXPECT(dcm_prox(g, 0.01, d, x, &point, &env) == DCM_OK);
  EXPECT(close_to(point, 0.971675407097270603, 1e-15));
  EXPECT(close_to(env, 0.957524472809402364, 1e-14));
  EXPECT(dcm_prox(g, -1.0, d, x, &point, NULL) == DCM_INVALID_ARGUMENT);

  dcm_function* f = NULL;
  EXPECT(dcm_function_abs(&f) == DCM_OK);
  const double x2[1] = {0.05};
  EXPECT(dcm_prox(f, 0.1, d, x2, NULL, &env) == DCM_OK);
  EXPECT(close_to(env, 0.0125, 1e-15));
  double v = 0.0;
  EXPECT(dcm_function_eval(f, x2, &v) == DCM_OK);
  EXPECT(v == 0.05);

  const double a[4] = {1.0, 0.0, 0.0, 1.0};
  const double b[2] = {0.0, 0.0};
  dcm_function* q = NULL;
  EXPECT(dcm_function_quadratic(a, 2, 2, b, &q) == DCM_OK);
  dcm_function* l1 = NULL;
  EXPECT(dcm_function_l1(2, &l1) == DCM_OK);
  const double lo[1] = {1.0}, hi[1] = {0.0};
  dcm_function* box = NULL;
  EXPECT(dcm_function_box(lo, hi, 1, &box) == DCM_INVALID_ARGUMENT);
  EXPECT(box == NULL);

  dcm_problem* p = NULL;
  EXPECT(dcm_problem_create(g, l1, &p) == DCM_DIMENSION_MISMATCH);
  EXPECT(dcm_problem_create(q, l1, &p) == DCM_OK);
  dcm_problem_free(p);

  dcm_function_free(g);
  dcm_function_free(f);
  dcm_function_free(q);
  dcm_function_free(l1);
  dcm_metric_free(d);
}

static void test_objective_and_solve(void) {
  const double d1v[1] = {1.5}, d2v[1] = {2.0};
  dcm_metric *d1 = NULL, *d2 = NULL;
  EXPECT(dcm_metric_certify(d1v, 1, 2.0, &d1) == DCM_OK);
  EXPECT(dcm_metric_certify(d2v, 1, 2.0, &d2) == DCM_OK);
  dcm_problem* p = NULL;
  EXPECT(dcm_problem_example1(&p) == DCM_OK);
  const double xm[1] = {0.5773502691896258};
  double phi = 0.0;
  EXPECT(dcm_problem_phi(p, xm, &phi) == DCM_OK);
  EXPECT(close_to(phi, -0.384900179459750509, 1e-15));

  dcm_objective* s = NULL;
  EXPECT(dcm_objective_create(p, 0.04, 0.01, d1, d2, 2.0, &s) == DCM_OK);
  EXPECT(dcm_objective_dim(s) == 1);
  EXPECT(close_to(dcm_objective_eta(s), 1250.0, 1e-9));
  EXPECT(close_to(dcm_objective_eta1(s), 800.0, 1e-9));
  double lower = 0.0, upper = 0.0, value = 0.0, grad = 0.0;
  const double x[1] = {0.3};
  EXPECT(dcm_objective_value(s, x, &value) == DCM_OK);
  EXPECT(dcm_objective_gradient(s, x, &grad) == DCM_OK);
  EXPECT(dcm_objective_sandwich(s, x, &lower, &upper) == DCM_OK);
  EXPECT(lower <= value + 1e-9 && value <= upper + 1e-9);

  dcm_objective* tight = NULL;
  EXPECT(dcm_objective_create(p, 0.03, 0.01, d1, d2, 2.0, &tight) == DCM_OK);
  EXPECT(dcm_objective_sandwich(tight, x, &lower, &upper) == DCM_NOT_ADMISSIBLE);
  dcm_objective_free(tight);

  dcm_solver_options o;
  dcm_solver_options_default(&o);
  EXPECT(o.algo == DCM_ALGO_GD && o.gamma == 1.8 && o.tol == 1e-4);
  o.algo = DCM_ALGO_INERTIAL;
  o.gamma = 0.9;
  const double x0[1] = {0.5};
  dcm_result* r = NULL;
  EXPECT(dcm_solve(s, &o, x0, NULL, &r) == DCM_OK);
  EXPECT(dcm_result_status(r) == DCM_SOLVER_CONVERGED);
  EXPECT(dcm_result_iterations(r) > 0);
  EXPECT(dcm_result_trace_length(r) == (size_t)dcm_result_iterations(r));
  EXPECT(dcm_result_descent_ok(r));
  EXPECT(dcm_result_rate_ok(r));
  double xf = 0.0;
  EXPECT(dcm_result_final_x(r, &xf) == DCM_OK);
  EXPECT(dcm_problem_phi(p, &xf, &phi) == DCM_OK);
  EXPECT(close_to(phi, -0.3843, 5e-3));
  EXPECT(dcm_result_write_trace(r, "capi_out/trace.csv") == DCM_OK);
  FILE* fp = fopen("capi_out/trace.csv", "rb");
  EXPECT(fp != NULL);
  if (fp) {
    char header[128] = {0};
    EXPECT(fgets(header, sizeof header, fp) != NULL);
    EXPECT(strcmp(header, "n,x,phi_smooth,phi_orig,step_norm,grad_gap_norm,theta_n\n") == 0);
    fclose(fp);
  }
  EXPECT(dcm_result_write_trace(r, NULL) == DCM_INVALID_ARGUMENT);
  dcm_result_free(r);

  o.algo = DCM_ALGO_GD;
  o.gamma = 2.5;
  r = NULL;
  EXPECT(dcm_solve(s, &o, x0, NULL, &r) == DCM_ADMISSIBILITY_VIOLATION);
  EXPECT(r == NULL);
  EXPECT(strstr(dcm_last_error(), "(0, 2)") != NULL);
  o.gamma = 1.0;
  o.max_iter = 2;
  EXPECT(dcm_solve(s, &o, x0, NULL, &r) == DCM_OK);
  EXPECT(dcm_result_status(r) == DCM_SOLVER_MAX_ITER);
  EXPECT(dcm_result_iterations(r) == 2);
  dcm_result_free(r);
  o.max_iter = 0;
  EXPECT(dcm_solve(s, &o, x0, NULL, &r) == DCM_INVALID_ARGUMENT);

  dcm_objective_free(s);
  dcm_problem_free(p);
  dcm_metric_free(d1);
  dcm_metric_free(d2);
}

int main(void) {
  EXPECT(strcmp(dcm_version(), "0.1.0") == 0);
  test_metric();
  test_functions();
  test_objective_and_solve();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return EXIT_FAILURE;
  }
  printf("C API checks passed\n");
  return EXIT_SUCCESS;
}
