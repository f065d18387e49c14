#include "dcmoreau/dcmoreau.h"

#include <iostream>
#include <new>
#include <string>

#include "dcmoreau/csv.hpp"
#include "dcmoreau/error.hpp"
#include "dcmoreau/experiment.hpp"

struct dcm_metric {
  dcm::MetricMatrix value;
};
struct dcm_function {
  dcm::ConvexFunction value;
};
struct dcm_problem {
  dcm::DCProblem value;
};
struct dcm_objective {
  dcm::SmoothedObjective value;
};
struct dcm_result {
  dcm::SolverResult value;
};

namespace {

thread_local std::string last_error;

dcm_status fail(dcm_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs `body` and converts any exception into a status code.
template <typename F>
dcm_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return DCM_OK;
  } catch (const dcm::Error& e) {
    return fail(static_cast<dcm_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DCM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DCM_INTERNAL, e.what());
  }
}

dcm::Vector vec(const double* x, Eigen::Index n) {
  return Eigen::Map<const dcm::Vector>(x, n);
}

void copy_out(const dcm::Vector& v, double* out) {
  if (out) Eigen::Map<dcm::Vector>(out, v.size()) = v;
}

bool any_null() { return false; }
template <typename T, typename... Rest>
bool any_null(const T* p, const Rest*... rest) {
  return p == nullptr || any_null(rest...);
}

dcm_status null_arg() { return fail(DCM_INVALID_ARGUMENT, "null argument"); }

template <typename Handle, typename Make>
dcm_status create(Handle** out, Make&& make) {
  if (!out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new Handle{make()}; });
}

std::string dir_or_empty(const char* d) { return d ? d : ""; }

}  // namespace

extern "C" {

const char* dcm_version(void) { return "0.1.0"; }

const char* dcm_last_error(void) { return last_error.c_str(); }

const char* dcm_status_name(dcm_status status) {
  if (status == DCM_OK) return "ok";
  if (status == DCM_INTERNAL) return "internal";
  if (status < DCM_INVALID_ARGUMENT || status > DCM_DOMAIN_MISMATCH) return "unknown";
  return dcm::to_string(static_cast<dcm::ErrorCode>(static_cast<int>(status)));
}

dcm_status dcm_metric_certify(const double* entries, size_t dim, double m, dcm_metric** out) {
  if (!entries || dim == 0) return null_arg();
  return create(out, [&] {
    const auto n = static_cast<Eigen::Index>(dim);
    const dcm::Matrix a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                         Eigen::RowMajor>>(entries, n, n);
    return dcm::MetricMatrix::certify(a, m);
  });
}

void dcm_metric_free(dcm_metric* metric) { delete metric; }

size_t dcm_metric_dim(const dcm_metric* metric) {
  return metric ? static_cast<size_t>(metric->value.dim()) : 0;
}

dcm_status dcm_metric_norm_sq(const dcm_metric* metric, const double* x, double* out) {
  if (any_null(metric, x, out)) return null_arg();
  return guarded([&] { *out = metric->value.norm_sq(vec(x, metric->value.dim())); });
}

dcm_status dcm_function_abs(dcm_function** out) {
  return create(out, [] { return dcm::catalog::abs(); });
}

dcm_status dcm_function_abs_cubed(dcm_function** out) {
  return create(out, [] { return dcm::catalog::abs_cubed(); });
}

dcm_status dcm_function_l1(size_t dim, dcm_function** out) {
  if (dim == 0) return fail(DCM_INVALID_ARGUMENT, "dim must be positive");
  return create(out, [&] { return dcm::catalog::l1(static_cast<Eigen::Index>(dim)); });
}

dcm_status dcm_function_zero(size_t dim, dcm_function** out) {
  if (dim == 0) return fail(DCM_INVALID_ARGUMENT, "dim must be positive");
  return create(out, [&] { return dcm::catalog::constant(static_cast<Eigen::Index>(dim), 0.0); });
}

dcm_status dcm_function_quadratic(const double* a, size_t rows, size_t cols, const double* b,
                                  dcm_function** out) {
  if (any_null(a, b) || rows == 0 || cols == 0) return null_arg();
  return create(out, [&] {
    const auto r = static_cast<Eigen::Index>(rows);
    const auto c = static_cast<Eigen::Index>(cols);
    const dcm::Matrix am =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            a, r, c);
    return dcm::catalog::quadratic(am, vec(b, r));
  });
}

dcm_status dcm_function_box(const double* lo, const double* hi, size_t dim, dcm_function** out) {
  if (any_null(lo, hi) || dim == 0) return null_arg();
  return create(out, [&] {
    const auto n = static_cast<Eigen::Index>(dim);
    return dcm::catalog::box_indicator(vec(lo, n), vec(hi, n));
  });
}

void dcm_function_free(dcm_function* func) { delete func; }

size_t dcm_function_dim(const dcm_function* func) {
  return func ? static_cast<size_t>(func->value.dim()) : 0;
}

dcm_status dcm_function_eval(const dcm_function* func, const double* x, double* out) {
  if (any_null(func, x, out)) return null_arg();
  return guarded([&] { *out = func->value.eval(vec(x, func->value.dim())); });
}

dcm_status dcm_prox(const dcm_function* func, double lambda, const dcm_metric* metric,
                    const double* x, double* point_out, double* envelope_out) {
  if (any_null(func, metric, x)) return null_arg();
  return guarded([&] {
    const dcm::ProxResult r = dcm::prox(func->value, lambda, metric->value, vec(x, func->value.dim()));
    copy_out(r.point, point_out);
    if (envelope_out) *envelope_out = r.envelope_value;
  });
}

dcm_status dcm_problem_create(const dcm_function* g, const dcm_function* f, dcm_problem** out) {
  if (any_null(g, f)) return null_arg();
  return create(out, [&] { return dcm::DCProblem(g->value, f->value); });
}

dcm_status dcm_problem_example1(dcm_problem** out) {
  return create(out, [] { return dcm::example1_problem(); });
}

void dcm_problem_free(dcm_problem* problem) { delete problem; }

dcm_status dcm_problem_phi(const dcm_problem* problem, const double* x, double* out) {
  if (any_null(problem, x, out)) return null_arg();
  return guarded([&] { *out = dcm::phi_value(problem->value, vec(x, problem->value.dim())); });
}

dcm_status dcm_objective_create(const dcm_problem* problem, double lambda, double mu,
                                const dcm_metric* d1, const dcm_metric* d2, double m,
                                dcm_objective** out) {
  if (any_null(problem, d1, d2)) return null_arg();
  return create(out, [&] {
    return dcm::SmoothedObjective(problem->value,
                                  dcm::SmoothingParams::make(lambda, mu, d1->value, d2->value, m));
  });
}

void dcm_objective_free(dcm_objective* obj) { delete obj; }

size_t dcm_objective_dim(const dcm_objective* obj) {
  return obj ? static_cast<size_t>(obj->value.dim()) : 0;
}

double dcm_objective_eta(const dcm_objective* obj) { return obj ? obj->value.eta() : 0.0; }

double dcm_objective_eta1(const dcm_objective* obj) { return obj ? obj->value.eta1() : 0.0; }

dcm_status dcm_objective_value(const dcm_objective* obj, const double* x, double* out) {
  if (any_null(obj, x, out)) return null_arg();
  return guarded([&] { *out = obj->value.value(vec(x, obj->value.dim())); });
}

dcm_status dcm_objective_gradient(const dcm_objective* obj, const double* x, double* grad_out) {
  if (any_null(obj, x, grad_out)) return null_arg();
  return guarded([&] { copy_out(obj->value.gradient(vec(x, obj->value.dim())), grad_out); });
}

dcm_status dcm_objective_sandwich(const dcm_objective* obj, const double* x, double* lower,
                                  double* upper) {
  if (any_null(obj, x, lower, upper)) return null_arg();
  return guarded([&] {
    const dcm::SandwichBounds b = dcm::sandwich_bounds(obj->value, vec(x, obj->value.dim()));
    *lower = b.lower;
    *upper = b.upper;
  });
}

void dcm_solver_options_default(dcm_solver_options* opts) {
  if (!opts) return;
  const dcm::SolverConfig d;
  opts->algo = DCM_ALGO_GD;
  opts->gamma = d.gamma;
  opts->gamma_n = 0.99;
  opts->theta_kind = DCM_THETA_MAX_ADMISSIBLE;
  opts->theta_value = 0.0;
  opts->tol = d.tol;
  opts->max_iter = d.max_iter;
  opts->stop_mode = DCM_STOP_STEP_NORM;
  opts->trace_thinning = d.trace_thinning;
  opts->record_trace = 1;
}

dcm_status dcm_solve(const dcm_objective* obj, const dcm_solver_options* opts, const double* x0,
                     const double* x1, dcm_result** out) {
  if (any_null(obj, opts, x0)) return null_arg();
  if (opts->max_iter <= 0 || opts->trace_thinning < 1 || !(opts->tol > 0.0)) {
    return fail(DCM_INVALID_ARGUMENT, "max_iter, trace_thinning and tol must be positive");
  }
  return create(out, [&] {
    dcm::SolverConfig cfg;
    cfg.algo = opts->algo == DCM_ALGO_INERTIAL ? dcm::Algorithm::Inertial
                                               : dcm::Algorithm::GradientDescent;
    cfg.gamma = opts->gamma;
    cfg.gamma_seq = dcm::constant_schedule(opts->gamma_n);
    switch (opts->theta_kind) {
      case DCM_THETA_CONSTANT: cfg.theta_policy = dcm::ThetaPolicy::constant(opts->theta_value); break;
      case DCM_THETA_ZERO: cfg.theta_policy = dcm::ThetaPolicy::zero(); break;
      default: cfg.theta_policy = dcm::ThetaPolicy::max_admissible(); break;
    }
    cfg.tol = opts->tol;
    cfg.max_iter = static_cast<long>(opts->max_iter);
    cfg.stop_mode = opts->stop_mode == DCM_STOP_GRAD_GAP_NORM ? dcm::StopMode::GradGapNorm
                                                              : dcm::StopMode::StepNorm;
    cfg.trace_thinning = static_cast<long>(opts->trace_thinning);
    cfg.record_trace = opts->record_trace != 0;
    const Eigen::Index n = obj->value.dim();
    const dcm::Vector v0 = vec(x0, n);
    const dcm::Vector v1 = x1 ? vec(x1, n) : v0;
    return dcm::run_solver(obj->value, cfg, v0, &v1);
  });
}

void dcm_result_free(dcm_result* result) { delete result; }

dcm_solver_status dcm_result_status(const dcm_result* result) {
  if (!result) return DCM_SOLVER_INNER_FAILURE;
  switch (result->value.status) {
    case dcm::SolverStatus::Converged: return DCM_SOLVER_CONVERGED;
    case dcm::SolverStatus::MaxIter: return DCM_SOLVER_MAX_ITER;
    default: return DCM_SOLVER_INNER_FAILURE;
  }
}

int64_t dcm_result_iterations(const dcm_result* result) {
  return result ? result->value.iterations : 0;
}

dcm_status dcm_result_final_x(const dcm_result* result, double* x_out) {
  if (any_null(result, x_out)) return null_arg();
  copy_out(result->value.final_x, x_out);
  return DCM_OK;
}

size_t dcm_result_trace_length(const dcm_result* result) {
  return result ? result->value.trace.size() : 0;
}

int dcm_result_descent_ok(const dcm_result* result) {
  return result && result->value.monitors.descent_ok();
}

int dcm_result_monotone_ok(const dcm_result* result) {
  return result && result->value.monitors.monotone_ok();
}

int dcm_result_rate_ok(const dcm_result* result) {
  return result && result->value.monitors.residual_rate_ok && result->value.monitors.summability_ok;
}

dcm_status dcm_result_write_trace(const dcm_result* result, const char* path) {
  if (any_null(result, path)) return null_arg();
  return guarded([&] { dcm::csv::write_file(path, dcm::csv::trace_csv(result->value.trace)); });
}

int dcm_cmd_solve(const char* config_path, const char* out_dir) {
  if (!config_path) {
    std::cerr << "error: --config is required\n";
    return 1;
  }
  return dcm::cmd_solve(config_path, dir_or_empty(out_dir), std::cout, std::cerr);
}

int dcm_cmd_reproduce(int table, const char* out_dir) {
  return dcm::cmd_reproduce(table, dir_or_empty(out_dir), std::cout, std::cerr);
}

int dcm_cmd_sweep(const char* config_path, const char* out_dir, int workers) {
  if (!config_path) {
    std::cerr << "error: --config is required\n";
    return 1;
  }
  std::optional<int> w;
  if (workers > 0) w = workers;
  return dcm::cmd_sweep(config_path, dir_or_empty(out_dir), w, std::cout, std::cerr);
}

int dcm_cmd_validate(const char* suite, uint64_t seed, const char* out_dir) {
  if (!suite) {
    std::cerr << "error: --suite is required\n";
    return 1;
  }
  return dcm::cmd_validate(suite, seed, dir_or_empty(out_dir), std::cout, std::cerr);
}

}  // extern "C"
