#include "dcmoreau/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcmoreau/error.hpp"

namespace dcm {
namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigParse, what); }

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  return j.get<double>();
}

Vector vector_of(const json& j, const std::string& key) {
  if (j.is_number()) return Vector::Constant(1, j.get<double>());
  if (!j.is_array() || j.empty()) bad("'" + key + "' must be a number or a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], key);
  return v;
}

Matrix matrix_of(const json& j, const std::string& key, Eigen::Index dim) {
  if (j.is_number()) {
    if (dim <= 0) bad("'" + key + "' given as a scalar but the dimension is unknown");
    return j.get<double>() * Matrix::Identity(dim, dim);
  }
  if (!j.is_array() || j.empty()) bad("'" + key + "' must be a number or a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) bad("'" + key + "' rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      bad("'" + key + "' rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<size_t>(c)], key);
  }
  return m;
}

FunctionSpec function_spec(const json& j, const std::string& key) {
  FunctionSpec s;
  if (j.is_string()) {
    s.type = j.get<std::string>();
  } else if (j.is_object() && j.contains("type") && j["type"].is_string()) {
    s.type = j["type"].get<std::string>();
  } else {
    bad("'" + key + "' must be a catalog name or an object with a 'type'");
  }
  if (s.type == "abs" || s.type == "abs_cubed") {
    s.dim = 1;
  } else if (s.type == "l1" || s.type == "zero") {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() <= 0) {
      bad("'" + key + "': " + s.type + " needs a positive integer 'dim'");
    }
    s.dim = j["dim"].get<long>();
  } else if (s.type == "quadratic") {
    if (!j.is_object() || !j.contains("A") || !j.contains("b")) bad("'" + key + "': quadratic needs 'A' and 'b'");
    s.a = matrix_of(j["A"], key + ".A", 0);
    s.b = vector_of(j["b"], key + ".b");
    if (s.a.rows() != s.b.size()) bad("'" + key + "': A rows must equal the length of b");
    s.dim = s.a.cols();
  } else if (s.type == "box") {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) bad("'" + key + "': box needs 'lo' and 'hi'");
    s.lo = vector_of(j["lo"], key + ".lo");
    s.hi = vector_of(j["hi"], key + ".hi");
    if (s.lo.size() != s.hi.size()) bad("'" + key + "': lo and hi lengths differ");
    if (((s.hi - s.lo).array() < 0.0).any()) bad("'" + key + "': lo must be <= hi");
    s.dim = s.lo.size();
  } else {
    bad("'" + key + "': unknown catalog function '" + s.type + "'");
  }
  return s;
}

std::vector<double> number_list(const json& j, const std::string& key) {
  if (!j.is_array()) bad("'" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, key));
  return out;
}

void parse_solver(const json& j, SolverConfig& s) {
  if (!j.is_object()) bad("'solver' must be an object");
  if (j.contains("algo")) {
    const std::string a = j["algo"].is_string() ? j["algo"].get<std::string>() : "";
    if (a == "gd") {
      s.algo = Algorithm::GradientDescent;
    } else if (a == "inertial") {
      s.algo = Algorithm::Inertial;
    } else {
      bad("'solver.algo' must be \"gd\" or \"inertial\"");
    }
  }
  s.gamma = s.algo == Algorithm::GradientDescent ? 1.8 : 0.9;
  if (j.contains("gamma")) s.gamma = number(j["gamma"], "solver.gamma");
  if (j.contains("gamma_n")) s.gamma_seq = constant_schedule(number(j["gamma_n"], "solver.gamma_n"));
  if (j.contains("theta_policy")) {
    const json& t = j["theta_policy"];
    if (t.is_string() && t.get<std::string>() == "max_admissible") {
      s.theta_policy = ThetaPolicy::max_admissible();
    } else if (t.is_string() && t.get<std::string>() == "zero") {
      s.theta_policy = ThetaPolicy::zero();
    } else if (t.is_object() && t.contains("constant")) {
      s.theta_policy = ThetaPolicy::constant(number(t["constant"], "solver.theta_policy.constant"));
    } else {
      bad("'solver.theta_policy' must be \"max_admissible\", \"zero\" or {\"constant\": c}");
    }
  }
  if (j.contains("tol")) s.tol = number(j["tol"], "solver.tol");
  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_integer() || j["max_iter"].get<long>() <= 0) {
      bad("'solver.max_iter' must be a positive integer");
    }
    s.max_iter = j["max_iter"].get<long>();
  }
  if (j.contains("stop_mode")) {
    const std::string m = j["stop_mode"].is_string() ? j["stop_mode"].get<std::string>() : "";
    if (m == "step_norm") {
      s.stop_mode = StopMode::StepNorm;
    } else if (m == "grad_gap_norm") {
      s.stop_mode = StopMode::GradGapNorm;
    } else {
      bad("'solver.stop_mode' must be \"step_norm\" or \"grad_gap_norm\"");
    }
  }
  if (!(s.tol > 0.0)) bad("'solver.tol' must be positive");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) bad("config root must be an object");

  RunConfig cfg;
  if (!root.contains("problem") || !root["problem"].is_object()) bad("missing 'problem' section");
  const json& prob = root["problem"];
  if (!prob.contains("g") || !prob.contains("f")) bad("'problem' needs 'g' and 'f'");
  cfg.g = function_spec(prob["g"], "problem.g");
  cfg.f = function_spec(prob["f"], "problem.f");
  if (cfg.g.dim != cfg.f.dim) bad("'problem': g and f have different dimensions");
  const Eigen::Index dim = cfg.g.dim;
  if (prob.contains("witness")) {
    const json& w = prob["witness"];
    if (!w.is_object()) bad("'problem.witness' must be an object");
    WitnessSpec ws;
    if (w.contains("coef")) ws.coef = number(w["coef"], "problem.witness.coef");
    if (w.contains("power")) ws.power = number(w["power"], "problem.witness.power");
    if (w.contains("beta")) ws.beta = number(w["beta"], "problem.witness.beta");
    cfg.witness = ws;
  }

  if (!root.contains("smoothing") || !root["smoothing"].is_object()) bad("missing 'smoothing' section");
  const json& sm = root["smoothing"];
  if (!sm.contains("lambda") || !sm.contains("mu")) bad("'smoothing' needs 'lambda' and 'mu'");
  cfg.lambda = number(sm["lambda"], "smoothing.lambda");
  cfg.mu = number(sm["mu"], "smoothing.mu");
  if (sm.contains("m")) cfg.m = number(sm["m"], "smoothing.m");
  cfg.d1 = sm.contains("d1") ? matrix_of(sm["d1"], "smoothing.d1", dim) : Matrix::Identity(dim, dim);
  cfg.d2 = sm.contains("d2") ? matrix_of(sm["d2"], "smoothing.d2", dim) : Matrix::Identity(dim, dim);
  if (cfg.d1.rows() != dim || cfg.d1.cols() != dim || cfg.d2.rows() != dim || cfg.d2.cols() != dim) {
    bad("'smoothing': d1/d2 must be dim x dim");
  }

  if (root.contains("solver")) parse_solver(root["solver"], cfg.solver);

  cfg.x0 = root.contains("x0") ? vector_of(root["x0"], "x0") : Vector::Ones(dim);
  if (cfg.x0.size() != dim) bad("'x0' has the wrong dimension");
  if (root.contains("x1")) {
    cfg.x1 = vector_of(root["x1"], "x1");
    if (cfg.x1->size() != dim) bad("'x1' has the wrong dimension");
  }

  if (root.contains("output")) {
    const json& out = root["output"];
    if (!out.is_object()) bad("'output' must be an object");
    if (out.contains("trace")) {
      if (!out["trace"].is_string()) bad("'output.trace' must be a string");
      cfg.trace_output = out["trace"].get<std::string>();
    }
    if (out.contains("trace_thinning")) {
      if (!out["trace_thinning"].is_number_integer() || out["trace_thinning"].get<long>() < 1) {
        bad("'output.trace_thinning' must be an integer >= 1");
      }
      cfg.solver.trace_thinning = out["trace_thinning"].get<long>();
    }
  }

  if (root.contains("sweep")) {
    const json& sw = root["sweep"];
    if (!sw.is_object()) bad("'sweep' must be an object");
    cfg.sweep.lambdas = sw.contains("lambda") ? number_list(sw["lambda"], "sweep.lambda")
                                              : std::vector<double>{cfg.lambda};
    cfg.sweep.mus = sw.contains("mu") ? number_list(sw["mu"], "sweep.mu") : std::vector<double>{cfg.mu};
    if (sw.contains("gamma")) cfg.sweep.gammas = number_list(sw["gamma"], "sweep.gamma");
    if (sw.contains("workers")) {
      if (!sw["workers"].is_number_integer() || sw["workers"].get<int>() < 1) {
        bad("'sweep.workers' must be an integer >= 1");
      }
      cfg.sweep.workers = sw["workers"].get<int>();
    }
    if (sw.contains("output")) {
      if (!sw["output"].is_string()) bad("'sweep.output' must be a string");
      cfg.sweep.output = sw["output"].get<std::string>();
    }
  } else {
    cfg.sweep.lambdas = {cfg.lambda};
    cfg.sweep.mus = {cfg.mu};
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ConvexFunction build_function(const FunctionSpec& spec) {
  if (spec.type == "abs") return catalog::abs();
  if (spec.type == "abs_cubed") return catalog::abs_cubed();
  if (spec.type == "l1") return catalog::l1(spec.dim);
  if (spec.type == "zero") return catalog::constant(spec.dim, 0.0);
  if (spec.type == "quadratic") return catalog::quadratic(spec.a, spec.b);
  if (spec.type == "box") return catalog::box_indicator(spec.lo, spec.hi);
  throw Error(ErrorCode::ConfigParse, "unknown catalog function '" + spec.type + "'");
}

DCProblem build_problem(const RunConfig& cfg) {
  std::optional<CoercivityWitness> w;
  if (cfg.witness) {
    const WitnessSpec ws = *cfg.witness;
    w = CoercivityWitness{[ws](double t) { return ws.coef * std::pow(t, ws.power); }, ws.beta};
  }
  return DCProblem(build_function(cfg.g), build_function(cfg.f), w);
}

SmoothedObjective build_objective(const RunConfig& cfg, std::optional<double> lambda,
                                  std::optional<double> mu) {
  return SmoothedObjective(
      build_problem(cfg),
      SmoothingParams::make(lambda.value_or(cfg.lambda), mu.value_or(cfg.mu),
                            MetricMatrix::certify(cfg.d1, cfg.m), MetricMatrix::certify(cfg.d2, cfg.m),
                            cfg.m));
}

}  // namespace dcm
