#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcmoreau/smoothing.hpp"
#include "dcmoreau/solvers.hpp"

namespace dcm {

/// One catalog entry addressed by name: abs, abs_cubed, quadratic, l1, box,
/// zero.
struct FunctionSpec {
  std::string type;
  Eigen::Index dim = 0;  // l1 / zero
  Matrix a;              // quadratic
  Vector b;              // quadratic
  Vector lo, hi;         // box
};

struct WitnessSpec {
  double coef = 0.5;   // phi(t) = coef * t^power
  double power = 3.0;
  double beta = 0.0;
};

struct SweepSpec {
  std::vector<double> lambdas;
  std::vector<double> mus;
  std::vector<double> gammas;  // empty: the solver's gamma
  int workers = 1;
  std::string output = "sweep.csv";
};

/// A parsed JSON experiment description. See README.md for the schema.
struct RunConfig {
  FunctionSpec g;
  FunctionSpec f;
  std::optional<WitnessSpec> witness;
  double lambda = 0.01;
  double mu = 0.01;
  double m = 1.0;
  Matrix d1;
  Matrix d2;
  SolverConfig solver;
  Vector x0;
  std::optional<Vector> x1;
  std::string trace_output = "trace.csv";
  SweepSpec sweep;
};

/// Throws ConfigParse with a message naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

ConvexFunction build_function(const FunctionSpec& spec);
DCProblem build_problem(const RunConfig& cfg);
/// Certifies D1, D2 under m; lambda and mu may be overridden (sweeps).
SmoothedObjective build_objective(const RunConfig& cfg, std::optional<double> lambda = std::nullopt,
                                  std::optional<double> mu = std::nullopt);

}  // namespace dcm
