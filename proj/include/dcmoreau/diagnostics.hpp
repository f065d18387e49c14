#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcmoreau/smoothing.hpp"
#include "dcmoreau/solvers.hpp"

namespace dcm {

struct OracleConfig {
  Vector grid_lo = Vector::Constant(1, -3.0);
  Vector grid_hi = Vector::Constant(1, 3.0);
  double grid_step = 1e-3;
  double fd_step = 1e-6;
  std::uint64_t seed = 42;
};

/// Grid argmin of g(w) + |w - x|_D^2 / (2 lambda) over [grid_lo, grid_hi],
/// refined by local ternary search to grid_step / 100. dim <= 2 only
/// (DimensionTooLarge otherwise).
Vector brute_force_prox(const ConvexFunction& func, double lambda, const MetricMatrix& d,
                        const Vector& x, const OracleConfig& oc);

/// Central differences of the smoothed objective's value.
Vector fd_gradient(const SmoothedObjective& s, const Vector& x, const OracleConfig& oc);

struct PropertyResult {
  std::string name;
  int samples = 0;
  double max_slack = 0.0;  // worst observed violation amount (<= tolerance passes)
  double tolerance = 0.0;
  bool passed = true;
  // Informational properties are reported but do not decide all_passed().
  bool gating = true;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  std::string to_text() const;
  std::string to_csv() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  // Overrides for the Example-1 smoothing used by the suites.
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> gamma;
};

/// Suite names: metric, prox, envelope, gradient, descent_gd,
/// descent_inertial, cluster.
const std::vector<std::string>& suite_names();

/// Deterministic given the options. Throws UnknownSuite, and propagates
/// AdmissibilityViolation from solver suites before any iteration runs.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace dcm
