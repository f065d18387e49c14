#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "dcmoreau/error.hpp"
#include "dcmoreau/solvers.hpp"
#include "oracle.hpp"

using namespace dcm;

namespace {

Vector v1(double x) { return Vector::Constant(1, x); }

SmoothedObjective example1(double lambda, double mu, double d1 = 1.0, double d2 = 1.0, double m = 1.0) {
  return SmoothedObjective(example1_problem(),
                           SmoothingParams::make(lambda, mu, MetricMatrix::scalar(1, d1, m),
                                                 MetricMatrix::scalar(1, d2, m), m));
}

SolverConfig config(Algorithm a, double gamma) {
  SolverConfig c;
  c.algo = a;
  c.gamma = gamma;
  return c;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("admissible step sizes and momentum") {
  const SmoothedObjective s = example1(0.01, 0.01);
  const GammaInterval gd = admissible_gamma_range(s, Algorithm::GradientDescent);
  CHECK(gd.contains(1.8));
  CHECK_FALSE(gd.contains(2.0));
  CHECK_FALSE(gd.contains(0.0));
  const GammaInterval in = admissible_gamma_range(s, Algorithm::Inertial);
  // 2*400 / (5*400 + 2*100)
  CHECK(in.lo == doctest::Approx(4.0 / 11.0).epsilon(1e-15));
  CHECK(in.contains(4.0 / 11.0));
  CHECK_FALSE(in.contains(1.0));
  CHECK(theta_bound(0.9, 0.99, 400.0, 100.0) == doctest::Approx(11.0 / 175.0).epsilon(1e-15));
}

TEST_CASE("inadmissible configurations are rejected before iterating") {
  const SmoothedObjective s = example1(0.01, 0.01);
  CHECK(code_of([&] { run_gd(s, config(Algorithm::GradientDescent, 2.5), v1(1.0)); }) ==
        ErrorCode::AdmissibilityViolation);
  try {
    run_gd(s, config(Algorithm::GradientDescent, 2.5), v1(1.0));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(0, 2)") != std::string::npos);
  }
  CHECK(code_of([&] { run_inertial(s, config(Algorithm::Inertial, 0.2), v1(1.0), v1(1.0)); }) ==
        ErrorCode::AdmissibilityViolation);
  SolverConfig c = config(Algorithm::Inertial, 0.9);
  c.theta_policy = ThetaPolicy::constant(0.5);
  CHECK(code_of([&] { run_inertial(s, c, v1(1.0), v1(1.0)); }) == ErrorCode::AdmissibilityViolation);
  c.theta_policy = ThetaPolicy::constant(0.05);
  CHECK_NOTHROW(run_inertial(s, c, v1(1.0), v1(1.0)));
  c.theta_policy = ThetaPolicy::max_admissible();
  c.gamma_seq = constant_schedule(1.0);
  CHECK(code_of([&] { run_inertial(s, c, v1(1.0), v1(1.0)); }) == ErrorCode::AdmissibilityViolation);
}

TEST_CASE("gradient descent on Example 1") {
  const SmoothedObjective s = example1(0.005, 0.005);
  const SolverResult r = run_gd(s, config(Algorithm::GradientDescent, 1.8), v1(1.0));
  CHECK(r.status == SolverStatus::Converged);
  CHECK(std::abs(s.phi(r.final_x) - oracle::example1_min()) < 1e-2);
  CHECK(std::abs(s.phi(r.final_x) - (-0.3843)) < 5e-3);
  CHECK(r.monitors.descent_ok());
  CHECK(r.monitors.monotone_ok());
  CHECK(r.monitors.residual_rate_ok);
  CHECK(r.monitors.boundedness_checked);
  CHECK(r.monitors.boundedness_ok);
  CHECK(r.final_stop_measure <= 1e-4);
  CHECK(static_cast<long>(r.trace.size()) == r.iterations);
  for (size_t k = 0; k < r.trace.size(); ++k) CHECK(r.trace[k].n == static_cast<long>(k));
}

TEST_CASE("inertial method on Example 1") {
  const SmoothedObjective s = example1(0.04, 0.01, 1.5, 2.0, 2.0);
  const SolverResult r = run_inertial(s, config(Algorithm::Inertial, 0.9), v1(0.5), v1(0.5));
  CHECK(r.status == SolverStatus::Converged);
  CHECK(std::abs(s.phi(r.final_x) - (-0.3843)) < 5e-3);
  CHECK(r.monitors.descent_ok());
  CHECK(r.monitors.psi_ok());
  CHECK(r.monitors.summability_ok);
  CHECK(r.monitors.sum_step_sq <= r.monitors.geometric_sum_bound);
  const double theta = theta_bound(0.9, 0.99, s.eta(), s.eta1());
  CHECK(r.trace.at(3).theta == doctest::Approx(theta));
}

TEST_CASE("zero momentum reproduces gradient descent exactly") {
  const SmoothedObjective s = example1(0.02, 0.01);
  SolverConfig in = config(Algorithm::Inertial, 0.9);
  in.theta_policy = ThetaPolicy::zero();
  const SolverResult a = run_inertial(s, in, v1(1.0), v1(1.0));
  const SolverResult b = run_gd(s, config(Algorithm::GradientDescent, 0.9), v1(1.0));
  REQUIRE(a.trace.size() == b.trace.size());
  CHECK(a.iterations == b.iterations);
  for (size_t k = 0; k < a.trace.size(); ++k) {
    CHECK(a.trace[k].x == b.trace[k].x);
    CHECK(a.trace[k].phi_smooth == b.trace[k].phi_smooth);
    CHECK(a.trace[k].step_norm == b.trace[k].step_norm);
  }
}

TEST_CASE("iteration cap, thinning and stop modes") {
  const SmoothedObjective s = example1(0.01, 0.01);
  SolverConfig c = config(Algorithm::GradientDescent, 1.0);
  c.max_iter = 3;
  const SolverResult capped = run_gd(s, c, v1(1.0));
  CHECK(capped.status == SolverStatus::MaxIter);
  CHECK(capped.iterations == 3);
  CHECK(capped.trace.size() == 3);

  c.max_iter = 1000000;
  c.trace_thinning = 10;
  const SolverResult thin = run_gd(s, c, v1(1.0));
  REQUIRE(thin.trace.size() >= 2);
  for (size_t k = 0; k + 1 < thin.trace.size(); ++k) CHECK(thin.trace[k].n % 10 == 0);
  CHECK(thin.trace.back().n == thin.iterations - 1);

  c.trace_thinning = 1;
  c.record_trace = false;
  CHECK(run_gd(s, c, v1(1.0)).trace.empty());

  c.stop_mode = StopMode::GradGapNorm;
  c.tol = 1e-6;
  const SolverResult gap = run_gd(s, c, v1(1.0));
  CHECK(gap.status == SolverStatus::Converged);
  CHECK(gap.final_stop_measure <= 1e-6 * s.eta() / c.gamma);
}

TEST_CASE("warnings and inner failures") {
  const SmoothedObjective loose = example1(0.01, 0.02);
  const SolverResult r = run_gd(loose, config(Algorithm::GradientDescent, 1.0), v1(1.0));
  CHECK_FALSE(r.warnings.empty());

  // A broken subgradient oracle keeps the inner solver from certifying the
  // prox, which surfaces as a status rather than a throw.
  ConvexFunction l1_sub("broken_l1", 2, [](const Vector& x) { return x.lpNorm<1>(); });
  l1_sub.with_subgrad([](const Vector& x) -> Vector {
    return Vector::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
  });
  const SmoothedObjective s(DCProblem(catalog::quadratic(Matrix::Identity(2, 2), Vector::Zero(2)), l1_sub),
                            SmoothingParams::make(0.1, 0.1, MetricMatrix::identity(2),
                                                  MetricMatrix::identity(2), 1.0));
  Vector x0(2);
  x0 << 0.3, -0.7;
  const SolverResult bad = run_gd(s, config(Algorithm::GradientDescent, 1.0), x0);
  CHECK(bad.status == SolverStatus::InnerFailure);
  CHECK_FALSE(bad.message.empty());
}
