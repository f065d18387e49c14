#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcmoreau/config.hpp"
#include "dcmoreau/solvers.hpp"

namespace dcm {

/// One (row, algorithm) cell of a published results table on Example 1.
struct TableRow {
  int table = 1;
  std::string row_id;
  Algorithm algo = Algorithm::GradientDescent;
  double gamma = 1.8;
  double lambda = 0.0;
  double mu = 0.0;
  double d1 = 1.0;
  double d2 = 1.0;
  double m = 1.0;
  double x0 = 1.0;  // x1 = x0 for the inertial method
  double published_phi = 0.0;
  long published_iters = 0;
};

struct TableOutcome {
  TableRow row;
  double ours_phi = 0.0;  // Phi at the final iterate
  long iterations = 0;
  SolverStatus status = SolverStatus::MaxIter;
  double abs_diff() const;
};

/// Rows of table 1 or 2 (InvalidArgument otherwise), each algorithm listed
/// separately and keyed by (algorithm, gamma).
std::vector<TableRow> table_rows(int table);
TableOutcome run_table_row(const TableRow& row);
std::vector<TableOutcome> reproduce_table(int table);
std::string comparison_csv(const std::vector<TableOutcome>& outcomes);

struct SweepCell {
  std::size_t index = 0;
  double lambda = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
};

struct SweepRow {
  SweepCell cell;
  std::string status;  // solver status, or "error"
  std::string message;
  long iterations = 0;
  Vector final_x;
  double phi = 0.0;
  double phi_smooth = 0.0;
  ClusterPointReport report;
};

/// Cells in lambda-major, then mu, then gamma order.
std::vector<SweepCell> sweep_cells(const RunConfig& cfg);
/// Runs every cell on up to `workers` threads; rows come back in cell order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, int workers);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Command entry points. Each returns the process exit code and never throws.

/// 0 converged, 2 max_iter, 1 on config, admissibility or inner-solver error.
int cmd_solve(const std::string& config_path, const std::string& out_dir, std::ostream& out,
              std::ostream& err);
int cmd_reproduce(int table, const std::string& out_dir, std::ostream& out, std::ostream& err);
/// `workers` overrides the config's worker count when given.
int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<int> workers, std::ostream& out, std::ostream& err);
/// Prints the suite report; writes it as CSV too when `out_dir` is non-empty.
int cmd_validate(const std::string& suite, std::uint64_t seed, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);

}  // namespace dcm
