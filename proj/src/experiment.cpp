#include "dcmoreau/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <thread>

#include "dcmoreau/csv.hpp"
#include "dcmoreau/diagnostics.hpp"
#include "dcmoreau/error.hpp"

namespace dcm {
namespace {

namespace fs = std::filesystem;
using csv::format_double;

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return (fs::path(dir) / name).string();
}

const char* algo_name(Algorithm a) {
  return a == Algorithm::Inertial ? "inertial" : "gd";
}

struct PaperCell {
  double lambda, mu;
  double phi_gd, phi_in;
  long iters_gd, iters_in;
};

// Table 1: d1 = d2 = 1. A single-valued row means lambda = mu.
constexpr PaperCell kTable1[] = {
    {0.15, 0.1, -0.3422, -0.3436, 90, 106},     {0.05, 0.02, -0.3800, -0.3814, 248, 282},
    {0.03, 0.02, -0.3830, -0.3839, 278, 310},   {0.03, 0.01, -0.3828, -0.3841, 394, 450},
    {0.02, 0.01, -0.3838, -0.3847, 420, 483},   {0.005, 0.005, -0.3843, -0.3841, 832, 579},
    {0.01, 0.01, -0.3844, -0.3849, 510, 339},   {0.01, 0.005, -0.3842, -0.3847, 686, 801},
};

// Table 2: d1 = 1.5, d2 = 2, m = 2, lambda = 4 mu.
constexpr PaperCell kTable2[] = {
    {0.2, 0.05, -0.3487, -0.3574, 444, 531},    {0.12, 0.03, -0.3707, -0.3778, 604, 708},
    {0.04, 0.01, -0.3808, -0.3843, 1174, 1393}, {0.048, 0.012, -0.3804, -0.3848, 1052, 1245},
    {0.05, 0.0125, -0.3803, -0.3849, 1026, 1241},
};

SolverConfig table_solver(const TableRow& row) {
  SolverConfig cfg;
  cfg.algo = row.algo;
  cfg.gamma = row.gamma;
  cfg.tol = 1e-4;
  cfg.record_trace = false;
  return cfg;
}

}  // namespace

double TableOutcome::abs_diff() const { return std::abs(ours_phi - row.published_phi); }

std::vector<TableRow> table_rows(int table) {
  if (table != 1 && table != 2) {
    throw Error(ErrorCode::InvalidArgument, "table must be 1 or 2");
  }
  std::vector<TableRow> rows;
  const auto add = [&](const PaperCell& c, int idx) {
    TableRow base;
    base.table = table;
    base.row_id = "T" + std::to_string(table) + "R" + std::to_string(idx + 1);
    base.lambda = c.lambda;
    base.mu = c.mu;
    if (table == 2) {
      base.d1 = 1.5;
      base.d2 = 2.0;
      base.m = 2.0;
    }
    TableRow gd = base;
    gd.algo = Algorithm::GradientDescent;
    gd.gamma = 1.8;
    gd.published_phi = c.phi_gd;
    gd.published_iters = c.iters_gd;
    TableRow in = base;
    in.algo = Algorithm::Inertial;
    in.gamma = 0.9;
    in.published_phi = c.phi_in;
    in.published_iters = c.iters_in;
    // The table-2 inertial values are only reached when started below the
    // minimizer 1/sqrt(3); gradient descent from 1.0 matches both tables.
    if (table == 2) in.x0 = 0.5;
    rows.push_back(gd);
    rows.push_back(in);
  };
  if (table == 1) {
    for (int i = 0; i < 8; ++i) add(kTable1[i], i);
  } else {
    for (int i = 0; i < 5; ++i) add(kTable2[i], i);
  }
  return rows;
}

TableOutcome run_table_row(const TableRow& row) {
  const SmoothedObjective s(example1_problem(),
                            SmoothingParams::make(row.lambda, row.mu,
                                                  MetricMatrix::scalar(1, row.d1, row.m),
                                                  MetricMatrix::scalar(1, row.d2, row.m), row.m));
  const Vector x0 = Vector::Constant(1, row.x0);
  const SolverResult r = run_solver(s, table_solver(row), x0);
  TableOutcome out;
  out.row = row;
  out.ours_phi = s.phi(r.final_x);
  out.iterations = r.iterations;
  out.status = r.status;
  return out;
}

std::vector<TableOutcome> reproduce_table(int table) {
  std::vector<TableOutcome> out;
  for (const TableRow& row : table_rows(table)) out.push_back(run_table_row(row));
  return out;
}

std::string comparison_csv(const std::vector<TableOutcome>& outcomes) {
  std::string s = csv::row({"row_id", "algorithm", "gamma", "lambda", "mu", "d1", "d2", "m", "x0",
                            "paper_phi", "ours_phi", "abs_diff", "paper_iters", "our_iters",
                            "status"});
  for (const TableOutcome& o : outcomes) {
    const TableRow& r = o.row;
    s += csv::row({r.row_id, algo_name(r.algo), format_double(r.gamma), format_double(r.lambda),
                   format_double(r.mu), format_double(r.d1), format_double(r.d2),
                   format_double(r.m), format_double(r.x0), format_double(r.published_phi),
                   format_double(o.ours_phi), format_double(o.abs_diff()),
                   std::to_string(r.published_iters), std::to_string(o.iterations),
                   to_string(o.status)});
  }
  return s;
}

std::vector<SweepCell> sweep_cells(const RunConfig& cfg) {
  std::vector<double> gammas = cfg.sweep.gammas;
  if (gammas.empty()) gammas.push_back(cfg.solver.gamma);
  std::vector<SweepCell> cells;
  for (double l : cfg.sweep.lambdas) {
    for (double mu : cfg.sweep.mus) {
      for (double g : gammas) cells.push_back({cells.size(), l, mu, g});
    }
  }
  return cells;
}

namespace {

SweepRow run_cell(const RunConfig& cfg, const SweepCell& cell) {
  SweepRow row;
  row.cell = cell;
  try {
    const SmoothedObjective s = build_objective(cfg, cell.lambda, cell.mu);
    SolverConfig sc = cfg.solver;
    sc.gamma = cell.gamma;
    sc.record_trace = false;
    const Vector* x1 = cfg.x1 ? &*cfg.x1 : nullptr;
    const SolverResult r = run_solver(s, sc, cfg.x0, x1);
    row.status = to_string(r.status);
    row.message = r.message;
    row.iterations = r.iterations;
    row.final_x = r.final_x;
    if (r.status != SolverStatus::InnerFailure) {
      row.phi = s.phi(r.final_x);
      row.phi_smooth = s.value(r.final_x);
      row.report = cluster_point_report(s, r.final_x);
    }
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& cfg, int workers) {
  const std::vector<SweepCell> cells = sweep_cells(cfg);
  std::vector<SweepRow> rows(cells.size());
  const auto n_threads =
      static_cast<std::size_t>(std::max(1, std::min<int>(workers, static_cast<int>(cells.size()))));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cfg, cells[i]);
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = csv::row({"cell", "lambda", "mu", "gamma", "status", "iterations", "x",
                            "phi_orig", "phi_smooth", "prox_gap", "phi_gap", "abs_phi_gap",
                            "operator_distance", "identity_residual", "eps_needed",
                            "smooth_gap_direct", "smooth_gap_identity", "grad_gap_norm"});
  for (const SweepRow& r : rows) {
    std::vector<std::string> f{std::to_string(r.cell.index), format_double(r.cell.lambda),
                               format_double(r.cell.mu), format_double(r.cell.gamma), r.status};
    const bool have = r.status == "converged" || r.status == "max_iter";
    if (!have) {
      f.resize(18);
    } else {
      const ClusterPointReport& c = r.report;
      for (const std::string& v :
           {std::to_string(r.iterations), csv::format_vector(r.final_x), format_double(r.phi),
            format_double(r.phi_smooth), format_double(c.prox_gap), format_double(c.phi_gap),
            format_double(std::abs(c.phi_gap)), format_double(c.operator_distance),
            format_double(c.identity_residual), format_double(c.eps_needed),
            format_double(c.smooth_gap_direct), format_double(c.smooth_gap_identity),
            format_double(c.grad_gap_norm)}) {
        f.push_back(v);
      }
    }
    s += csv::row(f);
  }
  return s;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir, std::ostream& out,
              std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config_path);
    const SmoothedObjective s = build_objective(cfg);
    const Vector* x1 = cfg.x1 ? &*cfg.x1 : nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    const SolverResult r = run_solver(s, cfg.solver, cfg.x0, x1);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
    if (r.status == SolverStatus::InnerFailure) {
      err << "error: " << r.message << "\n";
      return 1;
    }
    const std::string trace_path = join_path(out_dir, cfg.trace_output);
    csv::write_file(trace_path, csv::trace_csv(r.trace));
    out << "status=" << to_string(r.status) << " iterations=" << r.iterations
        << " x=" << csv::format_vector(r.final_x) << " phi=" << format_double(s.phi(r.final_x))
        << " phi_smooth=" << format_double(s.value(r.final_x)) << " wall_time_s=" << wall
        << " trace=" << trace_path << "\n";
    return r.status == SolverStatus::Converged ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_reproduce(int table, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<TableOutcome> outcomes = reproduce_table(table);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string path = join_path(out_dir, "table" + std::to_string(table) + "_comparison.csv");
    csv::write_file(path, comparison_csv(outcomes));
    double worst = 0.0;
    for (const TableOutcome& o : outcomes) {
      out << o.row.row_id << " " << algo_name(o.row.algo) << " lambda=" << o.row.lambda
          << " mu=" << o.row.mu << " published=" << o.row.published_phi << " ours=" << o.ours_phi
          << " diff=" << o.abs_diff() << " iters=" << o.iterations << "\n";
      worst = std::max(worst, o.abs_diff());
    }
    out << "rows=" << outcomes.size() << " max_abs_diff=" << worst << " wall_time_s=" << wall
        << " csv=" << path << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<int> workers, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config_path);
    const int w = workers.value_or(cfg.sweep.workers);
    if (w < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
    const std::vector<SweepRow> rows = run_sweep(cfg, w);
    const std::string path = join_path(out_dir, cfg.sweep.output);
    csv::write_file(path, sweep_csv(rows));
    int failed = 0;
    for (const SweepRow& r : rows) {
      if (r.status == "error") {
        ++failed;
        err << "cell " << r.cell.index << ": " << r.message << "\n";
      }
    }
    out << "cells=" << rows.size() << " errors=" << failed << " csv=" << path << "\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate(const std::string& suite, std::uint64_t seed, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  try {
    SuiteOptions opts;
    opts.seed = seed;
    const SuiteReport report = run_suite(suite, opts);
    out << report.to_text();
    if (!out_dir.empty()) {
      csv::write_file(join_path(out_dir, "validate_" + suite + ".csv"), report.to_csv());
    }
    return report.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dcm
