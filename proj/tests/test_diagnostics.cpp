#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dcmoreau/diagnostics.hpp"
#include "dcmoreau/error.hpp"
#include "oracle.hpp"

using namespace dcm;

namespace {

Vector v1(double x) { return Vector::Constant(1, x); }

}  // namespace

TEST_CASE("brute-force prox agrees with closed forms") {
  const OracleConfig oc;
  const MetricMatrix one = MetricMatrix::identity(1);
  const Vector p = brute_force_prox(catalog::abs_cubed(), 0.01, one, v1(1.0), oc);
  CHECK(std::abs(p(0) - 0.971675407097270603) < 1e-5);
  CHECK(std::abs(brute_force_prox(catalog::abs(), 0.1, one, v1(1.0), oc)(0) - 0.9) < 1e-5);
  CHECK(std::abs(brute_force_prox(catalog::abs(), 0.1, one, v1(0.05), oc)(0)) < 1e-5);

  OracleConfig oc2;
  oc2.grid_lo = Vector::Constant(2, -2.0);
  oc2.grid_hi = Vector::Constant(2, 2.0);
  oc2.grid_step = 1e-2;
  Vector x(2);
  x << 1.0, -0.05;
  const Vector q = brute_force_prox(catalog::l1(2), 0.1, MetricMatrix::identity(2), x, oc2);
  CHECK(std::abs(q(0) - 0.9) < 1e-4);
  CHECK(std::abs(q(1)) < 1e-4);

  try {
    brute_force_prox(catalog::l1(3), 0.1, MetricMatrix::identity(3), Vector::Ones(3), oc);
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionTooLarge);
  }
}

TEST_CASE("finite-difference gradient") {
  const SmoothedObjective s(example1_problem(),
                            SmoothingParams::make(0.02, 0.01, MetricMatrix::identity(1),
                                                  MetricMatrix::identity(1), 1.0));
  const OracleConfig oc;
  for (double x : {-1.3, -0.2, 0.004, 0.5, 2.2}) {
    CHECK(fd_gradient(s, v1(x), oc)(0) == doctest::Approx(oracle::example1_gradient(x, 0.02, 0.01, 1, 1)).epsilon(1e-6));
  }
}

TEST_CASE("every suite passes and is deterministic") {
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    SuiteOptions o;
    o.seed = 42;
    const SuiteReport a = run_suite(name, o);
    CHECK(a.all_passed());
    CHECK_FALSE(a.properties.empty());
    CHECK(a.suite == name);
    CHECK(run_suite(name, o).to_csv() == a.to_csv());
  }
}

TEST_CASE("suite errors") {
  try {
    run_suite("bogus");
    FAIL("expected UnknownSuite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSuite);
  }
  SuiteOptions o;
  o.gamma = 2.5;
  try {
    run_suite("descent_gd", o);
    FAIL("expected AdmissibilityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AdmissibilityViolation);
  }
}

TEST_CASE("report serialization") {
  SuiteReport r;
  r.suite = "demo";
  r.seed = 7;
  r.properties.push_back({"ok", 3, -1.0, 0.0, true, true});
  r.properties.push_back({"note", 2, 0.5, 0.0, false, false});
  CHECK(r.all_passed());
  CHECK(r.to_text().find("[INFO] note") != std::string::npos);
  CHECK(r.to_csv().rfind("suite,property,samples,max_slack,tolerance,passed,gating\n", 0) == 0);
  r.properties.push_back({"bad", 1, 2.0, 0.0, false, true});
  CHECK_FALSE(r.all_passed());
  CHECK(r.to_text().find("[FAIL] bad") != std::string::npos);
}
