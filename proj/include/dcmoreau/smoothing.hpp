#pragma once

#include "dcmoreau/convex.hpp"
#include "dcmoreau/metric.hpp"
#include "dcmoreau/prox.hpp"

namespace dcm {

/// Everything computed at one point of the smoothed objective.
struct SmoothedPoint {
  Vector x;
  Vector prox_g;   // prox_{lambda g}^{D1}(x)
  Vector prox_f;   // prox_{mu f}^{D2}(x)
  double env_g = 0.0;
  double env_f = 0.0;
  Vector grad_g;   // D1 (x - prox_g) / lambda
  Vector grad_f;   // D2 (x - prox_f) / mu
  double value() const { return env_g - env_f; }
  Vector gradient() const { return grad_g - grad_f; }
};

/// Phi_{lambda,mu}(x) = g_{lambda,D1}(x) - f_{mu,D2}(x).
class SmoothedObjective {
 public:
  SmoothedObjective(DCProblem problem, SmoothingParams params);

  const DCProblem& problem() const { return problem_; }
  const SmoothingParams& params() const { return params_; }
  double eta() const { return eta_; }
  double eta1() const { return eta1_; }
  Eigen::Index dim() const { return problem_.dim(); }

  SmoothedPoint evaluate(const Vector& x) const;
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// Original objective g - f.
  double phi(const Vector& x) const { return phi_value(problem_, x); }

 private:
  DCProblem problem_;
  SmoothingParams params_;
  double eta_;
  double eta1_;
};

/// Metric function h(z) - h(x) + |z - x|_D^2 / (2 param).
double metric_function(const ConvexFunction& h, double param, const MetricMatrix& d,
                       const Vector& z, const Vector& x);

struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Phi(prox_g) + (1/(2 m lambda) - m/(2 mu)) |prox_g - x|^2 <= Phi_{lambda,mu}(x)
///   <= Phi(prox_f) + (m/(2 lambda) - 1/(2 m mu)) |prox_f - x|^2.
/// Throws NotAdmissible unless lambda >= m^2 mu.
SandwichBounds sandwich_bounds(const SmoothedObjective& s, const Vector& x);

struct EpsilonApproxResult {
  bool approx = false;
  double metric_gap = 0.0;   // |h(zbar, x) - h(z, x)|
  double dist_sq = 0.0;      // |zbar - z|^2
  double radius_bound = 0.0; // 2 m param eps
  bool radius_ok = true;     // only meaningful when z is the prox of x
};

/// Single-function epsilon-approximation test. When `z_is_prox` and the test
/// passes, also checks |zbar - z|^2 <= 2 m param eps + 1e-10.
EpsilonApproxResult epsilon_approx_check(const ConvexFunction& h, double param,
                                         const MetricMatrix& d, double m, const Vector& z,
                                         const Vector& zbar, const Vector& x, double eps,
                                         bool z_is_prox = true);

/// Post-run diagnostics at a (candidate) cluster point x*.
struct ClusterPointReport {
  double prox_gap = 0.0;            // |prox_g(x*) - prox_f(x*)|
  double phi_gap = 0.0;             // Phi(prox_f(x*)) - Phi(prox_g(x*))
  double identity_residual = 0.0;   // |(lambda D1^-1 - mu D2^-1) y*|
  double operator_distance = 0.0;   // |lambda D1^-1 - mu D2^-1|_2
  double eps_needed = 0.0;          // smallest eps making prox_f an eps-approximation of prox_g
  double smooth_gap_direct = 0.0;   // Phi_{lambda,mu}(prox_g) - Phi(prox_g), evaluated
  double smooth_gap_identity = 0.0; // -f_{mu,D2}(prox_f(x*), prox_g(x*))
  double grad_gap_norm = 0.0;       // |y* - z*|
};

ClusterPointReport cluster_point_report(const SmoothedObjective& s, const Vector& xstar);

}  // namespace dcm
