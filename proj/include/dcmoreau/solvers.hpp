#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dcmoreau/smoothing.hpp"

namespace dcm {

enum class Algorithm { Inertial, GradientDescent };
enum class StopMode { StepNorm, GradGapNorm };

struct ThetaPolicy {
  enum class Kind { MaxAdmissible, Constant, Zero };
  Kind kind = Kind::MaxAdmissible;
  double value = 0.0;  // used by Constant

  static ThetaPolicy max_admissible() { return {Kind::MaxAdmissible, 0.0}; }
  static ThetaPolicy constant(double c) { return {Kind::Constant, c}; }
  static ThetaPolicy zero() { return {Kind::Zero, 0.0}; }
};

/// gamma_n in (0, 1) as a function of the iteration index.
using GammaSchedule = std::function<double(long)>;

inline GammaSchedule constant_schedule(double v) {
  return [v](long) { return v; };
}

struct SolverConfig {
  Algorithm algo = Algorithm::GradientDescent;
  double gamma = 1.8;
  GammaSchedule gamma_seq = constant_schedule(0.99);
  ThetaPolicy theta_policy = ThetaPolicy::max_admissible();
  double tol = 1e-4;
  long max_iter = 1000000;
  StopMode stop_mode = StopMode::StepNorm;
  /// Keep every k-th iterate in the trace (the last one is always kept).
  long trace_thinning = 1;
  bool record_trace = true;
};

struct IterateRecord {
  long n = 0;
  Vector x;  // x_n
  Vector w;  // extrapolated point (= x for gradient descent)
  Vector y;  // gradient of the g-envelope at w
  Vector z;  // gradient of the f-envelope at w
  double theta = 0.0;
  double phi_smooth = 0.0;  // Phi_{lambda,mu}(x_n)
  double phi_orig = 0.0;    // Phi(x_n)
  double step_norm = 0.0;   // |x_{n+1} - x_n|
  double grad_gap_norm = 0.0;
};

/// Per-run inequality monitors. Slack values are lhs - rhs; a check passes
/// when its worst slack is <= kMonitorSlack.
struct MonitorSummary {
  static constexpr double kMonitorSlack = 1e-10;

  // Descent inequality: for gradient descent the proof form
  // Phi(x+) <= Phi(x) + (eta/2 - eta/gamma)|x+ - x|^2; for the inertial
  // method the full three-term bound with theta_n and eta1.
  double max_descent_slack = -std::numeric_limits<double>::infinity();
  long descent_violations = 0;
  // The displayed gradient-descent form eta(1/2 - 1/gamma)|y - z|^2; recorded
  // only, never gating.
  double max_displayed_descent_slack = -std::numeric_limits<double>::infinity();

  double max_monotone_slack = -std::numeric_limits<double>::infinity();
  long monotone_violations = 0;

  // Gradient descent: min_k |y_k - z_k|^2 <= 2 eta (Phi_0 - Phi_best) / (gamma (2 - gamma) N).
  double min_grad_gap_sq = std::numeric_limits<double>::infinity();
  double residual_rate_bound = 0.0;
  bool residual_rate_ok = true;

  // Inertial: psi_{n+1} <= gamma_n psi_n + gamma/(eta(1-gamma)) (Phi_n - Phi_{n+1}).
  double max_psi_slack = -std::numeric_limits<double>::infinity();
  long psi_violations = 0;
  double sum_step_sq = 0.0;        // psi_1 + sum_n |x_{n+1} - x_n|^2
  double geometric_sum_bound = 0.0;
  bool summability_ok = true;

  // With a coercivity witness: phi(|x_n|) + beta <= Phi_{lambda,mu}(x_0).
  bool boundedness_checked = false;
  bool boundedness_ok = true;

  bool descent_ok() const { return descent_violations == 0; }
  bool monotone_ok() const { return monotone_violations == 0; }
  bool psi_ok() const { return psi_violations == 0; }
};

enum class SolverStatus { Converged, MaxIter, InnerFailure };

const char* to_string(SolverStatus s) noexcept;

struct SolverResult {
  SolverStatus status = SolverStatus::MaxIter;
  Vector final_x;
  long iterations = 0;
  double final_stop_measure = 0.0;
  std::vector<IterateRecord> trace;
  MonitorSummary monitors;
  std::vector<std::string> warnings;
  std::string message;
};

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
  bool contains(double g) const {
    return (lo_closed ? g >= lo : g > lo) && (hi_closed ? g <= hi : g < hi);
  }
};

/// Inertial: [2 eta / (5 eta + 2 eta1), 1). Gradient descent: (0, 2).
GammaInterval admissible_gamma_range(const SmoothedObjective& s, Algorithm algo);

/// 2 (1 - gamma) eta gamma_n / (gamma (2 eta1 + 3 eta)).
double theta_bound(double gamma, double gamma_n, double eta, double eta1);

/// Gradient descent x+ = x - (gamma/eta)(y - z). Throws AdmissibilityViolation
/// when gamma is outside (0, 2).
SolverResult run_gd(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0);

/// Inertial gradient method from (x0, x1). Throws AdmissibilityViolation when
/// gamma or theta_n leaves the admissible set.
SolverResult run_inertial(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0,
                          const Vector& x1);

/// Dispatches on cfg.algo; x1 defaults to x0.
SolverResult run_solver(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0,
                        const Vector* x1 = nullptr);

}  // namespace dcm
