// Test-side reference computations. Deliberately independent of the library:
// scalar minimization by golden-section search and the closed forms worked
// out by hand for |x|^3 - |x|.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

// Minimizer of a convex scalar function on [a, b].
inline double golden_min(const std::function<double(double)>& h, double a, double b,
                         double tol = 1e-13) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double hc = h(c), hd = h(d);
  while (b - a > tol) {
    if (hc < hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - r * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + r * (b - a);
      hd = h(d);
    }
  }
  return 0.5 * (a + b);
}

// Scalar metric prox of `g` by direct minimization around x.
inline double scalar_prox(const std::function<double(double)>& g, double lambda, double d, double x,
                          double radius = 4.0) {
  return golden_min([&](double w) { return g(w) + d * (w - x) * (w - x) / (2.0 * lambda); },
                    x - radius, x + radius);
}

// Root of 3 w^2 sign(w) + d (w - x) / lambda = 0 by bisection.
inline double abs_cubed_prox_bisect(double x, double lambda, double d) {
  auto h = [&](double w) { return 3.0 * w * std::abs(w) + d * (w - x) / lambda; };
  double lo = -std::abs(x) - 1.0, hi = std::abs(x) + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double soft(double x, double t) {
  return std::copysign(std::max(std::abs(x) - t, 0.0), x);
}

// Moreau envelope of |.| with parameter mu and metric d (Huber).
inline double abs_envelope(double x, double mu, double d) {
  const double ax = std::abs(x);
  return ax >= mu / d ? ax - mu / (2.0 * d) : d * x * x / (2.0 * mu);
}

// Phi_{lambda,mu}(x) and its derivative for Phi = |x|^3 - |x| with scalar
// metrics d1, d2.
inline double example1_smoothed(double x, double lambda, double mu, double d1, double d2) {
  const double pg = abs_cubed_prox_bisect(x, lambda, d1);
  const double env_g = std::pow(std::abs(pg), 3) + d1 * (pg - x) * (pg - x) / (2.0 * lambda);
  return env_g - abs_envelope(x, mu, d2);
}

inline double example1_gradient(double x, double lambda, double mu, double d1, double d2) {
  const double pg = abs_cubed_prox_bisect(x, lambda, d1);
  const double pf = soft(x, mu / d2);
  return d1 * (x - pg) / lambda - d2 * (x - pf) / mu;
}

inline double example1_min() { return -(2.0 / 3.0) * std::sqrt(1.0 / 3.0); }

}  // namespace oracle
