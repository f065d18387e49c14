#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcmoreau/csv.hpp"
#include "dcmoreau/error.hpp"
#include "dcmoreau/experiment.hpp"

using namespace dcm;
namespace fs = std::filesystem;

namespace {

const char* const kExample1 = R"({
  "problem": {"g": "abs_cubed", "f": "abs"},
  "smoothing": {"lambda": 0.005, "mu": 0.005},
  "solver": {"algo": "gd", "gamma": 1.8},
  "x0": 1.0
})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dcmoreau_test_experiment_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for " << text);
  return ErrorCode::InvalidArgument;
}

long count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("csv formatting") {
  CHECK(csv::format_double(0.1) == "0.10000000000000001");
  CHECK(csv::format_double(-2.0) == "-2");
  CHECK(std::stod(csv::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  Vector v(3);
  v << 1.0, -0.5, 0.25;
  CHECK(csv::format_vector(v) == "1;-0.5;0.25");
  CHECK(csv::row({"a", "b"}) == "a,b\n");
  CHECK(std::string(csv::kTraceHeader) == "n,x,phi_smooth,phi_orig,step_norm,grad_gap_norm,theta_n");
  IterateRecord r;
  r.n = 4;
  r.x = v;
  r.phi_smooth = 0.5;
  const std::string t = csv::trace_csv({r});
  CHECK(t == "n,x,phi_smooth,phi_orig,step_norm,grad_gap_norm,theta_n\n4,1;-0.5;0.25,0.5,0,0,0,0\n");
  CHECK(t.find('\r') == std::string::npos);
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(kExample1);
  CHECK(c.g.type == "abs_cubed");
  CHECK(c.lambda == 0.005);
  CHECK(c.m == 1.0);
  CHECK(c.d1 == Matrix::Identity(1, 1));
  CHECK(c.solver.algo == Algorithm::GradientDescent);
  CHECK(c.x0 == Vector::Ones(1));
  CHECK_FALSE(c.x1.has_value());
  CHECK(c.sweep.lambdas == std::vector<double>{0.005});

  const RunConfig n = parse_config(R"({
    "problem": {"g": {"type": "quadratic", "A": [[1, 0], [0, 2]], "b": [1, 1]},
                "f": {"type": "l1", "dim": 2}},
    "smoothing": {"lambda": 0.4, "mu": 0.1, "m": 2, "d1": [[1.2, 0.1], [0.1, 1.0]], "d2": 1.5},
    "solver": {"algo": "inertial", "theta_policy": {"constant": 0.01}, "stop_mode": "grad_gap_norm",
               "max_iter": 50, "gamma_n": 0.9},
    "x0": [1, 2], "x1": [1, 2],
    "output": {"trace": "t.csv", "trace_thinning": 5},
    "sweep": {"lambda": [0.4, 0.5], "mu": [], "workers": 3}
  })");
  CHECK(n.g.a.rows() == 2);
  CHECK(n.d1(0, 1) == 0.1);
  CHECK(n.d2 == 1.5 * Matrix::Identity(2, 2));
  CHECK(n.solver.gamma == 0.9);
  CHECK(n.solver.theta_policy.kind == ThetaPolicy::Kind::Constant);
  CHECK(n.solver.stop_mode == StopMode::GradGapNorm);
  CHECK(n.solver.max_iter == 50);
  CHECK(n.solver.gamma_seq(0) == 0.9);
  CHECK(n.solver.trace_thinning == 5);
  CHECK(n.trace_output == "t.csv");
  CHECK(n.sweep.workers == 3);
  CHECK(sweep_cells(n).empty());
  CHECK_NOTHROW(build_objective(n));

  CHECK(parse_error("{not json") == ErrorCode::ConfigParse);
  CHECK(parse_error("[]") == ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"smoothing": {"lambda": 1, "mu": 1}})") == ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"problem": {"g": "nope", "f": "abs"}, "smoothing": {"lambda": 1, "mu": 1}})") ==
        ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"problem": {"g": "abs", "f": {"type": "l1", "dim": 2}}, "smoothing": {"lambda": 1, "mu": 1}})") ==
        ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"problem": {"g": "abs", "f": "abs"}, "smoothing": {"lambda": 1, "mu": 1}, "solver": {"algo": "newton"}})") ==
        ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"problem": {"g": "abs", "f": "abs"}, "smoothing": {"lambda": "x", "mu": 1}})") ==
        ErrorCode::ConfigParse);
  CHECK(parse_error(R"({"problem": {"g": "abs", "f": "abs"}, "smoothing": {"lambda": 1, "mu": 1}, "x0": [1, 2]})") ==
        ErrorCode::ConfigParse);

  // Parsing succeeds; certification of the metric under m fails.
  const RunConfig bad_metric = parse_config(
      R"({"problem": {"g": "abs", "f": "abs"}, "smoothing": {"lambda": 1, "mu": 1, "m": 2, "d1": 3}})");
  try {
    build_objective(bad_metric);
    FAIL("expected EigenvalueOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EigenvalueOutOfRange);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("table rows") {
  const auto t1 = table_rows(1);
  const auto t2 = table_rows(2);
  CHECK(t1.size() == 16);
  CHECK(t2.size() == 10);
  CHECK_THROWS_AS(table_rows(3), Error);
  for (const TableRow& r : t1) {
    CHECK(r.d1 == 1.0);
    CHECK(r.x0 == 1.0);
    CHECK(r.gamma == (r.algo == Algorithm::GradientDescent ? 1.8 : 0.9));
  }
  for (const TableRow& r : t2) {
    CHECK(r.lambda == doctest::Approx(4.0 * r.mu));
    CHECK(r.m == 2.0);
  }
}

TEST_CASE("table reproduction is within tolerance and written in full") {
  for (int table : {1, 2}) {
    const auto out = reproduce_table(table);
    for (const TableOutcome& o : out) {
      CAPTURE(o.row.row_id);
      CHECK(o.status == SolverStatus::Converged);
      CHECK(o.abs_diff() <= 5e-3);
    }
    const std::string s = comparison_csv(out);
    CHECK(count_lines(s) == static_cast<long>(out.size()) + 1);
    CHECK(s.rfind("row_id,algorithm,gamma,lambda,mu,d1,d2,m,x0,paper_phi,ours_phi,abs_diff,paper_iters,our_iters,status\n", 0) == 0);
  }
}

TEST_CASE("sweeps") {
  RunConfig c = parse_config(kExample1);
  c.sweep.lambdas = {0.02, 0.015, 0.011, 0.0101};
  c.sweep.mus = {0.01};
  const auto rows = run_sweep(c, 4);
  REQUIRE(rows.size() == 4);
  for (size_t k = 0; k < rows.size(); ++k) CHECK(rows[k].cell.index == k);
  for (size_t k = 1; k < rows.size(); ++k) {
    CHECK(std::abs(rows[k].report.phi_gap) <= std::abs(rows[k - 1].report.phi_gap));
  }
  CHECK(std::abs(rows.back().report.phi_gap) <= std::abs(rows.front().report.phi_gap) / 5.0);
  CHECK(sweep_csv(rows) == sweep_csv(run_sweep(c, 1)));

  c.sweep.lambdas = {0.02, 0.03};
  c.sweep.mus = {0.01, 0.005};
  const auto grid = run_sweep(c, 3);
  CHECK(grid.size() == 4);
  CHECK(grid[1].cell.lambda == 0.02);
  CHECK(grid[1].cell.mu == 0.005);
  CHECK(grid[2].cell.lambda == 0.03);

  c.sweep.lambdas.clear();
  const std::string empty = sweep_csv(run_sweep(c, 2));
  CHECK(count_lines(empty) == 1);

  c.sweep.lambdas = {0.02};
  c.sweep.mus = {0.01};
  c.sweep.gammas = {2.5};
  const auto err = run_sweep(c, 1);
  CHECK(err.at(0).status == "error");
  CHECK(count_lines(sweep_csv(err)) == 2);
}

TEST_CASE("commands") {
  const fs::path dir = scratch("commands");
  std::ostringstream out, err;

  const fs::path ok = write(dir, "ok.json", kExample1);
  CHECK(cmd_solve(ok.string(), (dir / "a").string(), out, err) == 0);
  CHECK(out.str().find("status=converged") != std::string::npos);
  const std::string trace_a = slurp(dir / "a" / "trace.csv");
  CHECK(trace_a.rfind(csv::kTraceHeader, 0) == 0);
  CHECK(cmd_solve(ok.string(), (dir / "b").string(), out, err) == 0);
  CHECK(slurp(dir / "b" / "trace.csv") == trace_a);

  const fs::path capped = write(dir, "capped.json", R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.01, "mu": 0.01},
    "solver": {"max_iter": 3}})");
  CHECK(cmd_solve(capped.string(), dir.string(), out, err) == 2);

  const fs::path bad_gamma = write(dir, "bad_gamma.json", R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.01, "mu": 0.01},
    "solver": {"algo": "gd", "gamma": 2.5}})");
  std::ostringstream e2;
  CHECK(cmd_solve(bad_gamma.string(), dir.string(), out, e2) == 1);
  CHECK(e2.str().find("(0, 2)") != std::string::npos);
  CHECK(cmd_solve((dir / "missing.json").string(), dir.string(), out, err) == 1);
  const fs::path garbage = write(dir, "garbage.json", "{");
  CHECK(cmd_solve(garbage.string(), dir.string(), out, err) == 1);

  const std::string zero_theta = R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.02, "mu": 0.01},
    "solver": {"algo": "inertial", "gamma": 0.9, "theta_policy": "zero"},
    "output": {"trace": "inertial.csv"}})";
  const std::string plain_gd = R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.02, "mu": 0.01},
    "solver": {"algo": "gd", "gamma": 0.9},
    "output": {"trace": "gd.csv"}})";
  CHECK(cmd_solve(write(dir, "z.json", zero_theta).string(), dir.string(), out, err) == 0);
  CHECK(cmd_solve(write(dir, "g.json", plain_gd).string(), dir.string(), out, err) == 0);
  CHECK(slurp(dir / "inertial.csv") == slurp(dir / "gd.csv"));

  CHECK(cmd_reproduce(1, (dir / "rep").string(), out, err) == 0);
  CHECK(count_lines(slurp(dir / "rep" / "table1_comparison.csv")) == 17);
  CHECK(cmd_reproduce(7, (dir / "rep").string(), out, err) == 1);

  const fs::path sweep = write(dir, "sweep.json", R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.02, "mu": 0.01},
    "sweep": {"lambda": [0.02, 0.03], "mu": [0.01, 0.005], "output": "grid.csv"}})");
  CHECK(cmd_sweep(sweep.string(), (dir / "s1").string(), 1, out, err) == 0);
  CHECK(cmd_sweep(sweep.string(), (dir / "s4").string(), 4, out, err) == 0);
  CHECK(count_lines(slurp(dir / "s1" / "grid.csv")) == 5);
  CHECK(slurp(dir / "s1" / "grid.csv") == slurp(dir / "s4" / "grid.csv"));
  const fs::path empty = write(dir, "empty.json", R"({
    "problem": {"g": "abs_cubed", "f": "abs"}, "smoothing": {"lambda": 0.02, "mu": 0.01},
    "sweep": {"lambda": [], "output": "empty.csv"}})");
  CHECK(cmd_sweep(empty.string(), dir.string(), std::nullopt, out, err) == 0);
  CHECK(count_lines(slurp(dir / "empty.csv")) == 1);

  std::ostringstream v1, v2;
  CHECK(cmd_validate("descent_gd", 42, dir.string(), v1, err) == 0);
  CHECK(cmd_validate("descent_gd", 42, "", v2, err) == 0);
  CHECK(v1.str() == v2.str());
  CHECK(fs::exists(dir / "validate_descent_gd.csv"));
  CHECK(cmd_validate("bogus", 42, "", out, err) == 1);
}
