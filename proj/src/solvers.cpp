#include "dcmoreau/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcmoreau/error.hpp"

namespace dcm {

const char* to_string(SolverStatus s) noexcept {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIter: return "max_iter";
    case SolverStatus::InnerFailure: return "inner_failure";
  }
  return "unknown";
}

GammaInterval admissible_gamma_range(const SmoothedObjective& s, Algorithm algo) {
  if (algo == Algorithm::GradientDescent) return {0.0, 2.0, false, false};
  const double e = s.eta(), e1 = s.eta1();
  return {2.0 * e / (5.0 * e + 2.0 * e1), 1.0, true, false};
}

double theta_bound(double gamma, double gamma_n, double eta, double eta1) {
  return 2.0 * (1.0 - gamma) * eta * gamma_n / (gamma * (2.0 * eta1 + 3.0 * eta));
}

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::AdmissibilityViolation, what);
}

std::string interval_text(const GammaInterval& iv) {
  std::ostringstream os;
  os << (iv.lo_closed ? "[" : "(") << iv.lo << ", " << iv.hi << (iv.hi_closed ? "]" : ")");
  return os.str();
}

void check_common(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0) {
  if (x0.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "x0 dimension mismatch");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (cfg.max_iter <= 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (cfg.trace_thinning < 1) throw Error(ErrorCode::InvalidArgument, "trace_thinning must be >= 1");
  const GammaInterval iv = admissible_gamma_range(s, cfg.algo);
  if (!iv.contains(cfg.gamma)) {
    std::ostringstream os;
    os << "gamma = " << cfg.gamma << " outside the admissible range " << interval_text(iv)
       << (cfg.algo == Algorithm::GradientDescent ? " for gradient descent" : " for the inertial method");
    violation(os.str());
  }
}

// theta_n for iteration n, validated against the asymptotic-regularity bound.
double theta_for(const SmoothedObjective& s, const SolverConfig& cfg, long n, double gamma_n) {
  if (cfg.algo == Algorithm::GradientDescent) return 0.0;
  if (!(gamma_n > 0.0 && gamma_n < 1.0)) {
    std::ostringstream os;
    os << "gamma_n = " << gamma_n << " at n = " << n << " outside (0, 1)";
    violation(os.str());
  }
  const double bound = theta_bound(cfg.gamma, gamma_n, s.eta(), s.eta1());
  switch (cfg.theta_policy.kind) {
    case ThetaPolicy::Kind::Zero: return 0.0;
    case ThetaPolicy::Kind::MaxAdmissible: return bound;
    case ThetaPolicy::Kind::Constant: {
      const double c = cfg.theta_policy.value;
      if (c < 0.0 || c > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "theta = " << c << " exceeds the admissible bound " << bound << " at n = " << n;
        violation(os.str());
      }
      return c;
    }
  }
  return 0.0;
}

SolverResult run(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0,
                 const Vector& x1) {
  check_common(s, cfg, x0);
  if (x1.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "x1 dimension mismatch");
  const bool inertial = cfg.algo == Algorithm::Inertial;
  // Surface a bad schedule or theta before any work.
  (void)theta_for(s, cfg, 0, cfg.gamma_seq ? cfg.gamma_seq(0) : 0.99);

  SolverResult res;
  if (!s.params().sandwich_admissible()) {
    res.warnings.push_back("lambda < m^2 mu: sandwich bounds and inf-comparison guarantees do not apply");
  }

  const double eta = s.eta(), eta1 = s.eta1(), gamma = cfg.gamma;
  const double step_scale = gamma / eta;
  MonitorSummary& mon = res.monitors;
  const auto& witness = s.problem().witness();
  mon.boundedness_checked = !inertial && witness.has_value();

  Vector x_prev = x0;
  Vector x = inertial ? x1 : x0;
  SmoothedPoint cur;
  try {
    cur = s.evaluate(x);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InnerSolverDiverged) throw;
    res.status = SolverStatus::InnerFailure;
    res.final_x = x;
    res.message = e.what();
    return res;
  }
  const double phi_start = cur.value();
  double phi_best = phi_start;
  const double psi_first = (x - x_prev).squaredNorm();  // psi_1
  mon.sum_step_sq = psi_first;
  double max_gamma_n = 0.0;

  auto check_bounded = [&](const Vector& pt) {
    if (!mon.boundedness_checked) return;
    if (witness->phi(pt.norm()) + witness->beta > phi_start + MonitorSummary::kMonitorSlack) {
      mon.boundedness_ok = false;
    }
  };
  check_bounded(x);

  res.status = SolverStatus::MaxIter;
  long n = 0;
  for (; n < cfg.max_iter; ++n) {
    const double gamma_n = inertial ? (cfg.gamma_seq ? cfg.gamma_seq(n) : 0.99) : 0.0;
    const double theta = theta_for(s, cfg, n, gamma_n);
    max_gamma_n = std::max(max_gamma_n, gamma_n);

    SmoothedPoint at_w;
    SmoothedPoint next;
    Vector w;
    Vector x_next;
    try {
      if (theta == 0.0) {
        w = x;
        at_w = cur;
      } else {
        w = x + theta * (x - x_prev);
        at_w = s.evaluate(w);
      }
      x_next = x - step_scale * (at_w.grad_g - at_w.grad_f);
      next = s.evaluate(x_next);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InnerSolverDiverged) throw;
      res.status = SolverStatus::InnerFailure;
      res.message = e.what();
      break;
    }

    const Vector gap = at_w.grad_g - at_w.grad_f;
    const double gap_norm = gap.norm();
    const double step_sq = (x_next - x).squaredNorm();
    const double step = std::sqrt(step_sq);
    const double prev_sq = (x - x_prev).squaredNorm();
    const double phi_n = cur.value(), phi_next = next.value();

    // Descent inequality (reduces to the gradient-descent form when theta = 0).
    const double rhs = phi_n + (eta * theta / 2.0 - eta / gamma + eta / 2.0) * step_sq +
                       (eta1 * theta * theta + eta * theta * theta + eta * theta / 2.0) * prev_sq;
    const double dslack = phi_next - rhs;
    mon.max_descent_slack = std::max(mon.max_descent_slack, dslack);
    if (dslack > MonitorSummary::kMonitorSlack) ++mon.descent_violations;
    if (!inertial) {
      const double disp = phi_next - (phi_n + eta * (0.5 - 1.0 / gamma) * gap_norm * gap_norm);
      mon.max_displayed_descent_slack = std::max(mon.max_displayed_descent_slack, disp);
    }

    const double mslack = phi_next - phi_n;
    mon.max_monotone_slack = std::max(mon.max_monotone_slack, mslack);
    if (mslack > MonitorSummary::kMonitorSlack) ++mon.monotone_violations;

    mon.min_grad_gap_sq = std::min(mon.min_grad_gap_sq, gap_norm * gap_norm);

    if (inertial) {
      const double pslack =
          step_sq - (gamma_n * prev_sq + gamma / (eta * (1.0 - gamma)) * (phi_n - phi_next));
      mon.max_psi_slack = std::max(mon.max_psi_slack, pslack);
      if (pslack > MonitorSummary::kMonitorSlack) ++mon.psi_violations;
    }
    mon.sum_step_sq += step_sq;
    phi_best = std::min(phi_best, phi_next);
    check_bounded(x_next);

    const bool keep = cfg.record_trace && (n % cfg.trace_thinning == 0);
    const double stop_measure = cfg.stop_mode == StopMode::StepNorm ? step : gap_norm;
    const double stop_tol = cfg.stop_mode == StopMode::StepNorm ? cfg.tol : cfg.tol * eta / gamma;
    const bool done = stop_measure <= stop_tol;
    if (keep || (cfg.record_trace && (done || n + 1 == cfg.max_iter))) {
      IterateRecord rec;
      rec.n = n;
      rec.x = x;
      rec.w = w;
      rec.y = at_w.grad_g;
      rec.z = at_w.grad_f;
      rec.theta = theta;
      rec.phi_smooth = phi_n;
      rec.phi_orig = s.phi(x);
      rec.step_norm = step;
      rec.grad_gap_norm = gap_norm;
      res.trace.push_back(std::move(rec));
    }

    x_prev = std::move(x);
    x = std::move(x_next);
    cur = std::move(next);
    res.final_stop_measure = stop_measure;
    if (done) {
      res.status = SolverStatus::Converged;
      ++n;
      break;
    }
  }
  if (res.status == SolverStatus::MaxIter) n = cfg.max_iter;

  res.iterations = n;
  res.final_x = x;

  if (!inertial && n > 0) {
    mon.residual_rate_bound = 2.0 * eta * (phi_start - phi_best) / (gamma * (2.0 - gamma) * n);
    mon.residual_rate_ok = mon.min_grad_gap_sq <= mon.residual_rate_bound + MonitorSummary::kMonitorSlack;
  }
  if (inertial && n > 0) {
    // Unrolled psi_{n+1} <= r psi_n + delta_n with r = max gamma_n.
    const double r = max_gamma_n;
    const double delta_sum = gamma / (eta * (1.0 - gamma)) * (phi_start - cur.value());
    mon.geometric_sum_bound = (psi_first + delta_sum) / (1.0 - r);
    mon.summability_ok = mon.sum_step_sq <= mon.geometric_sum_bound + MonitorSummary::kMonitorSlack;
  }
  return res;
}

}  // namespace

SolverResult run_gd(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0) {
  if (cfg.algo != Algorithm::GradientDescent) {
    throw Error(ErrorCode::InvalidArgument, "run_gd needs algo = gd");
  }
  return run(s, cfg, x0, x0);
}

SolverResult run_inertial(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0,
                          const Vector& x1) {
  if (cfg.algo != Algorithm::Inertial) {
    throw Error(ErrorCode::InvalidArgument, "run_inertial needs algo = inertial");
  }
  return run(s, cfg, x0, x1);
}

SolverResult run_solver(const SmoothedObjective& s, const SolverConfig& cfg, const Vector& x0,
                        const Vector* x1) {
  if (cfg.algo == Algorithm::GradientDescent) return run_gd(s, cfg, x0);
  return run_inertial(s, cfg, x0, x1 ? *x1 : x0);
}

}  // namespace dcm
