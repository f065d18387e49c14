#include "dcmoreau/smoothing.hpp"

#include <cmath>

#include "dcmoreau/error.hpp"

namespace dcm {

SmoothedObjective::SmoothedObjective(DCProblem problem, SmoothingParams params)
    : problem_(std::move(problem)),
      params_(std::move(params)),
      eta_(dcm::eta(params_)),
      eta1_(dcm::eta1(params_)) {
  if (params_.dim() != problem_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "smoothing metrics and problem differ in dimension");
  }
}

SmoothedPoint SmoothedObjective::evaluate(const Vector& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  SmoothedPoint p;
  p.x = x;
  ProxResult pg = prox(problem_.g(), params_.lambda, params_.d1, x);
  ProxResult pf = prox(problem_.f(), params_.mu, params_.d2, x);
  p.env_g = pg.envelope_value;
  p.env_f = pf.envelope_value;
  p.grad_g = params_.d1.apply(x - pg.point) / params_.lambda;
  p.grad_f = params_.d2.apply(x - pf.point) / params_.mu;
  p.prox_g = std::move(pg.point);
  p.prox_f = std::move(pf.point);
  return p;
}

double SmoothedObjective::value(const Vector& x) const { return evaluate(x).value(); }

Vector SmoothedObjective::gradient(const Vector& x) const { return evaluate(x).gradient(); }

double metric_function(const ConvexFunction& h, double param, const MetricMatrix& d,
                       const Vector& z, const Vector& x) {
  return h.eval(z) - h.eval(x) + d.norm_sq(z - x) / (2.0 * param);
}

SandwichBounds sandwich_bounds(const SmoothedObjective& s, const Vector& x) {
  const SmoothingParams& p = s.params();
  if (!p.sandwich_admissible()) {
    throw Error(ErrorCode::NotAdmissible, "sandwich bounds need lambda >= m^2 mu");
  }
  const SmoothedPoint pt = s.evaluate(x);
  const double m = p.m;
  SandwichBounds b;
  b.lower = s.phi(pt.prox_g) +
            (1.0 / (2.0 * m * p.lambda) - m / (2.0 * p.mu)) * (pt.prox_g - x).squaredNorm();
  b.upper = s.phi(pt.prox_f) +
            (m / (2.0 * p.lambda) - 1.0 / (2.0 * m * p.mu)) * (pt.prox_f - x).squaredNorm();
  return b;
}

EpsilonApproxResult epsilon_approx_check(const ConvexFunction& h, double param,
                                         const MetricMatrix& d, double m, const Vector& z,
                                         const Vector& zbar, const Vector& x, double eps,
                                         bool z_is_prox) {
  EpsilonApproxResult r;
  if (zbar == z) {
    r.approx = eps >= 0.0;
    r.radius_bound = 2.0 * m * param * eps;
    return r;
  }
  r.metric_gap = std::abs(metric_function(h, param, d, zbar, x) - metric_function(h, param, d, z, x));
  r.approx = r.metric_gap <= eps;
  r.dist_sq = (zbar - z).squaredNorm();
  r.radius_bound = 2.0 * m * param * eps;
  if (z_is_prox && r.approx) r.radius_ok = r.dist_sq <= r.radius_bound + 1e-10;
  return r;
}

ClusterPointReport cluster_point_report(const SmoothedObjective& s, const Vector& xstar) {
  const SmoothingParams& p = s.params();
  const DCProblem& prob = s.problem();
  const SmoothedPoint pt = s.evaluate(xstar);
  ClusterPointReport r;
  r.prox_gap = (pt.prox_g - pt.prox_f).norm();
  r.phi_gap = s.phi(pt.prox_f) - s.phi(pt.prox_g);
  const Matrix op = p.lambda * p.d1.inverse() - p.mu * p.d2.inverse();
  r.identity_residual = (op * pt.grad_g).norm();
  r.operator_distance = Eigen::JacobiSVD<Matrix>(op).singularValues()(0);

  const double g_gap = std::abs(metric_function(prob.g(), p.lambda, p.d1, pt.prox_f, xstar) -
                                metric_function(prob.g(), p.lambda, p.d1, pt.prox_g, xstar));
  const double f_gap = std::abs(metric_function(prob.f(), p.mu, p.d2, pt.prox_f, xstar) -
                                metric_function(prob.f(), p.mu, p.d2, pt.prox_g, xstar));
  r.eps_needed = std::max(g_gap, f_gap);

  r.smooth_gap_direct = s.value(pt.prox_g) - s.phi(pt.prox_g);
  r.smooth_gap_identity = -metric_function(prob.f(), p.mu, p.d2, pt.prox_f, pt.prox_g);
  r.grad_gap_norm = (pt.grad_g - pt.grad_f).norm();
  return r;
}

}  // namespace dcm
