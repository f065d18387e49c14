#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "dcmoreau/metric.hpp"
#include "dcmoreau/types.hpp"

namespace dcm {

using EvalFn = std::function<double(const Vector&)>;
using SubgradFn = std::function<Vector(const Vector&)>;
/// Closed-form metric prox argmin_w g(w) + |w - x|_D^2 / (2 lambda). Returns
/// nullopt when no closed form applies to the given metric (e.g. a separable
/// function under a non-diagonal D).
using AnalyticProxFn =
    std::function<std::optional<Vector>(double lambda, const MetricMatrix& d, const Vector& x)>;

/// Axis-aligned box; the effective domain of an indicator-type function.
struct BoxDomain {
  Vector lo;
  Vector hi;

  bool contains(const Vector& x) const;
  bool contains(const BoxDomain& other) const;
  Vector project(const Vector& x) const;
};

/// Proper convex lsc function on R^n given by oracles.
class ConvexFunction {
 public:
  ConvexFunction(std::string name, Eigen::Index dim, EvalFn eval);

  ConvexFunction& with_subgrad(SubgradFn fn);
  ConvexFunction& with_analytic_prox(AnalyticProxFn fn);
  ConvexFunction& with_domain(BoxDomain box);

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }

  double eval(const Vector& x) const;
  bool has_subgrad() const { return static_cast<bool>(subgrad_); }
  /// One deterministic element of the subdifferential.
  Vector subgrad(const Vector& x) const;
  bool has_analytic_prox() const { return static_cast<bool>(analytic_prox_); }
  std::optional<Vector> analytic_prox(double lambda, const MetricMatrix& d, const Vector& x) const;
  /// nullopt means dom = R^n.
  const std::optional<BoxDomain>& domain() const { return domain_; }

 private:
  std::string name_;
  Eigen::Index dim_;
  EvalFn eval_;
  SubgradFn subgrad_;
  AnalyticProxFn analytic_prox_;
  std::optional<BoxDomain> domain_;
};

/// Coercivity witness (phi, beta): Phi(x) >= phi(|x|) + beta.
struct CoercivityWitness {
  std::function<double(double)> phi;
  double beta = 0.0;
};

/// The DC pair Phi = g - f.
class DCProblem {
 public:
  /// Throws DimensionMismatch or DomainMismatch (dom g must lie inside dom f).
  DCProblem(ConvexFunction g, ConvexFunction f,
            std::optional<CoercivityWitness> witness = std::nullopt);

  const ConvexFunction& g() const { return g_; }
  const ConvexFunction& f() const { return f_; }
  Eigen::Index dim() const { return g_.dim(); }
  const std::optional<CoercivityWitness>& witness() const { return witness_; }

 private:
  ConvexFunction g_;
  ConvexFunction f_;
  std::optional<CoercivityWitness> witness_;
};

/// g(x) - f(x).
double phi_value(const DCProblem& p, const Vector& x);

namespace catalog {

/// f(w) = |w| on R.
ConvexFunction abs();
/// g(w) = |w|^3 on R.
ConvexFunction abs_cubed();
/// g(w) = 0.5 |A w - b|^2.
ConvexFunction quadratic(const Matrix& a, const Vector& b);
/// |w|_1 on R^dim.
ConvexFunction l1(Eigen::Index dim);
/// Indicator of [lo, hi]; throws InvalidArgument unless lo <= hi.
ConvexFunction box_indicator(const Vector& lo, const Vector& hi);
/// Constant function; its prox is the identity.
ConvexFunction constant(Eigen::Index dim, double value = 0.0);

/// Soft threshold sign(x) max(|x| - t, 0).
double soft_threshold(double x, double t);
/// Closed-form scalar prox of |w|^3 with parameter lambda and metric d.
double abs_cubed_prox(double x, double lambda, double d);

}  // namespace catalog

/// Phi(x) = |x|^3 - |x| with witness phi(t) = t^3/2, beta = -2/3.
DCProblem example1_problem();

/// Outcome of a sampled convexity / subgradient spot check.
struct ConvexityReport {
  int samples = 0;
  double max_convexity_violation = 0.0;
  double max_subgrad_violation = 0.0;
  bool passed = true;
};

/// Samples uniformly on [-radius, radius]^n. Validation mode only.
ConvexityReport spot_check_convexity(const ConvexFunction& fn, int samples,
                                     std::uint64_t seed, double radius = 3.0);

/// Checks Phi(x) >= phi(|x|) + beta on sampled points; true when no witness.
bool spot_check_coercivity(const DCProblem& p, int samples, std::uint64_t seed,
                           double radius = 3.0);

}  // namespace dcm
