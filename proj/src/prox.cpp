#include "dcmoreau/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dcmoreau/error.hpp"
#include "dcmoreau/random.hpp"

namespace dcm {
namespace {

void validate(const ProxRequest& req) {
  if (req.func == nullptr || req.metric == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "prox request needs a function and a metric");
  }
  if (!(req.lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "prox parameter must be > 0");
  if (!(req.inner_tol > 0.0) || req.inner_max_iter <= 0) {
    throw Error(ErrorCode::InvalidArgument, "inner tolerance and iteration budget must be positive");
  }
  if (req.x.size() != req.func->dim() || req.metric->dim() != req.func->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "prox request dimensions disagree");
  }
}

ProxResult finish(const ProxRequest& req, Vector point, int iters, double residual,
                  ProxMethod method) {
  ProxResult r;
  const Vector diff = point - req.x;
  r.envelope_value = req.func->eval(point) + req.metric->norm_sq(diff) / (2.0 * req.lambda);
  r.point = std::move(point);
  r.inner_iterations = iters;
  r.residual = residual;
  r.method = method;
  return r;
}

[[noreturn]] void diverged(const ProxRequest& req, double residual) {
  std::ostringstream os;
  os << "inner prox solver for " << req.func->name() << " stopped after " << req.inner_max_iter
     << " iterations with residual " << residual;
  throw Error(ErrorCode::InnerSolverDiverged, os.str());
}

}  // namespace

ProxResult prox_bisection(const ProxRequest& req) {
  validate(req);
  if (req.func->dim() != 1) throw Error(ErrorCode::InvalidArgument, "bisection prox is 1-D only");
  if (!req.func->has_subgrad()) {
    throw Error(ErrorCode::MissingOracles, req.func->name() + " has no subgradient oracle");
  }
  const double x = req.x(0);
  const double d = req.metric->entries()(0, 0);
  const double m = req.metric->bound_m();
  Vector w(1);
  auto h = [&](double t) {
    w(0) = t;
    return req.func->subgrad(w)(0) + d * (t - x) / req.lambda;
  };

  const double hx = h(x);
  if (hx == 0.0) return finish(req, req.x, 0, 0.0, ProxMethod::Bisection);

  double radius = std::max(2.0 * req.lambda * m * std::abs(hx), 1e-12);
  double lo = x - radius, hi = x + radius;
  int iters = 0;
  while (!(h(lo) <= 0.0 && h(hi) >= 0.0)) {
    radius *= 2.0;
    lo = x - radius;
    hi = x + radius;
    if (++iters > 200 || !std::isfinite(radius)) diverged(req, radius);
  }
  const double tol = req.inner_tol * std::max(1.0, std::abs(x));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (++iters > req.inner_max_iter) diverged(req, hi - lo);
  }
  Vector point(1);
  point(0) = 0.5 * (lo + hi);
  return finish(req, std::move(point), iters, hi - lo, ProxMethod::Bisection);
}

ProxResult prox_inner_descent(const ProxRequest& req) {
  validate(req);
  const ConvexFunction& g = *req.func;
  const MetricMatrix& d = *req.metric;
  const double lam = req.lambda;
  const Eigen::Index n = g.dim();

  // Backward step: g's own prox under the identity metric, else projection
  // onto its box domain (g smooth on the box), else none (g smooth on R^n).
  const MetricMatrix eye = MetricMatrix::identity(n);
  const bool has_backward = g.has_analytic_prox() && g.analytic_prox(1.0, eye, req.x).has_value();
  if (!has_backward && !g.has_subgrad()) {
    throw Error(ErrorCode::MissingOracles,
                g.name() + ": no usable closed-form prox and no subgradient oracle");
  }

  auto quad = [&](const Vector& w) { return d.norm_sq(w - req.x) / (2.0 * lam); };
  auto quad_grad = [&](const Vector& w) -> Vector { return d.apply(w - req.x) / lam; };

  // Smooth part and its gradient. With a backward step only the metric term is
  // smooth, with known curvature max_eig(D) / lambda.
  auto smooth = [&](const Vector& w) { return has_backward ? quad(w) : g.eval(w) + quad(w); };
  auto smooth_grad = [&](const Vector& w) -> Vector {
    return has_backward ? quad_grad(w) : Vector(g.subgrad(w) + quad_grad(w));
  };
  auto backward = [&](const Vector& v, double step) -> Vector {
    if (has_backward) return *g.analytic_prox(step, eye, v);
    if (g.domain()) return g.domain()->project(v);
    return v;
  };

  double lipschitz = d.max_eigenvalue() / lam;
  const double sigma = d.min_eigenvalue() / lam;

  Vector w = g.domain() ? g.domain()->project(req.x) : req.x;
  Vector y = w;
  double t = 1.0;
  double residual = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= req.inner_max_iter; ++k) {
    const Vector grad_y = smooth_grad(y);
    const double smooth_y = smooth(y);
    Vector next;
    // Backtracking on the smooth model; never triggers when only the metric
    // term is smooth because lipschitz starts at its exact curvature.
    for (int bt = 0; bt < 60; ++bt) {
      next = backward(y - grad_y / lipschitz, 1.0 / lipschitz);
      const Vector step = next - y;
      const double model = smooth_y + grad_y.dot(step) + 0.5 * lipschitz * step.squaredNorm();
      if (smooth(next) <= model + 1e-12 * std::max(1.0, std::abs(smooth_y))) break;
      lipschitz *= 2.0;
    }
    residual = (next - y).norm();
    if (residual <= req.inner_tol) {
      return finish(req, std::move(next), k, residual, ProxMethod::InnerDescent);
    }

    // Momentum for the strongly convex case. Restart when the step turns
    // against the momentum direction; comparing objective values instead
    // stalls once differences reach round-off.
    const bool restart = (y - next).dot(next - w) > 0.0;
    Vector prev = std::move(w);
    w = std::move(next);
    if (restart) {
      y = w;
      t = 1.0;
      continue;
    }
    const double kappa = std::max(1.0, lipschitz / sigma);
    const double beta = (std::sqrt(kappa) - 1.0) / (std::sqrt(kappa) + 1.0);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double mom = std::min(beta, (t - 1.0) / t_next);
    y = w + mom * (w - prev);
    if (g.domain() && !has_backward) y = g.domain()->project(y);
    t = t_next;
  }
  diverged(req, residual);
}

ProxResult prox(const ProxRequest& req) {
  validate(req);
  if (auto closed = req.func->analytic_prox(req.lambda, *req.metric, req.x)) {
    return finish(req, std::move(*closed), 0, 0.0, ProxMethod::Analytic);
  }
  if (req.func->dim() == 1 && req.func->has_subgrad()) return prox_bisection(req);
  return prox_inner_descent(req);
}

ProxResult prox(const ConvexFunction& func, double lambda, const MetricMatrix& d, const Vector& x) {
  ProxRequest req;
  req.func = &func;
  req.lambda = lambda;
  req.metric = &d;
  req.x = x;
  return prox(req);
}

double envelope_value(const ConvexFunction& func, double lambda, const MetricMatrix& d,
                      const Vector& x) {
  return prox(func, lambda, d, x).envelope_value;
}

LipschitzReport prox_lipschitz_check(const ConvexFunction& func, double lambda,
                                     const MetricMatrix& d, double m, int samples,
                                     std::uint64_t seed, double radius) {
  LipschitzReport rep;
  rep.bound = m * m;
  Rng rng(derive_seed(seed, "prox_lipschitz:" + func.name()));
  for (int s = 0; s < samples; ++s) {
    const Vector x = uniform_vector(rng, func.dim(), -radius, radius);
    const Vector y = uniform_vector(rng, func.dim(), -radius, radius);
    const double dx = (x - y).norm();
    if (dx == 0.0) continue;
    const double dp = (prox(func, lambda, d, x).point - prox(func, lambda, d, y).point).norm();
    rep.max_ratio = std::max(rep.max_ratio, dp / dx);
    ++rep.samples;
  }
  rep.passed = rep.max_ratio <= rep.bound + 1e-8;
  return rep;
}

}  // namespace dcm
