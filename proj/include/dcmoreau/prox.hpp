#pragma once

#include <cstdint>

#include "dcmoreau/convex.hpp"
#include "dcmoreau/metric.hpp"

namespace dcm {

struct ProxRequest {
  const ConvexFunction* func = nullptr;
  double lambda = 1.0;
  const MetricMatrix* metric = nullptr;
  Vector x;
  double inner_tol = 1e-10;
  int inner_max_iter = 10000;
};

enum class ProxMethod { Analytic, Bisection, InnerDescent };

struct ProxResult {
  Vector point;
  double envelope_value = 0.0;
  int inner_iterations = 0;
  double residual = 0.0;
  ProxMethod method = ProxMethod::Analytic;
};

/// argmin_w g(w) + |w - x|_D^2 / (2 lambda).
///
/// Dispatch order: the function's analytic prox when it applies to the metric;
/// bisection on the monotone optimality map w -> s(w) + D (w - x) / lambda when
/// dim = 1; otherwise accelerated forward-backward descent on the inner
/// objective, which is strongly convex with modulus min_eig(D) / lambda.
ProxResult prox(const ProxRequest& req);

/// The iterative paths only, bypassing any analytic formula. Used as an
/// independent route to cross-check closed forms.
ProxResult prox_bisection(const ProxRequest& req);
ProxResult prox_inner_descent(const ProxRequest& req);

ProxResult prox(const ConvexFunction& func, double lambda, const MetricMatrix& d, const Vector& x);

/// g(prox) + |prox - x|_D^2 / (2 lambda); never exceeds g(x).
double envelope_value(const ConvexFunction& func, double lambda, const MetricMatrix& d,
                      const Vector& x);

struct LipschitzReport {
  int samples = 0;
  double max_ratio = 0.0;
  double bound = 0.0;
  bool passed = true;
};

/// Samples pairs (x, y) uniformly on [-radius, radius]^n and records the
/// largest |prox(x) - prox(y)| / |x - y|; passes iff it is <= m^2 + 1e-8.
LipschitzReport prox_lipschitz_check(const ConvexFunction& func, double lambda,
                                     const MetricMatrix& d, double m, int samples,
                                     std::uint64_t seed, double radius = 3.0);

}  // namespace dcm
