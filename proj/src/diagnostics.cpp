#include "dcmoreau/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "dcmoreau/error.hpp"
#include "dcmoreau/random.hpp"

namespace dcm {

// ---------------------------------------------------------------------------
// Oracles

namespace {

double inner_objective(const ConvexFunction& func, double lambda, const MetricMatrix& d,
                       const Vector& x, const Vector& w) {
  return func.eval(w) + d.norm_sq(w - x) / (2.0 * lambda);
}

// Ternary search of a convex 1-D function on [lo, hi] down to width `tol`.
template <class F>
double ternary(F&& fn, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (fn(a) <= fn(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Vector brute_force_prox(const ConvexFunction& func, double lambda, const MetricMatrix& d,
                        const Vector& x, const OracleConfig& oc) {
  const Eigen::Index n = func.dim();
  if (n > 2) throw Error(ErrorCode::DimensionTooLarge, "grid prox oracle supports dim <= 2");
  if (x.size() != n || d.dim() != n || oc.grid_lo.size() != n || oc.grid_hi.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "grid prox oracle dimensions disagree");
  }
  if (!(oc.grid_step > 0.0) || ((oc.grid_hi - oc.grid_lo).array() <= 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "grid oracle needs grid_lo < grid_hi and grid_step > 0");
  }
  const double step = oc.grid_step;
  auto cells = [&](Eigen::Index i) {
    return static_cast<long>(std::floor((oc.grid_hi(i) - oc.grid_lo(i)) / step + 1e-9));
  };

  Vector best = oc.grid_lo;
  double best_val = std::numeric_limits<double>::infinity();
  Vector w(n);
  if (n == 1) {
    for (long k = 0; k <= cells(0); ++k) {
      w(0) = oc.grid_lo(0) + k * step;
      const double v = inner_objective(func, lambda, d, x, w);
      if (v < best_val) {
        best_val = v;
        best = w;
      }
    }
  } else {
    for (long i = 0; i <= cells(0); ++i) {
      w(0) = oc.grid_lo(0) + i * step;
      for (long j = 0; j <= cells(1); ++j) {
        w(1) = oc.grid_lo(1) + j * step;
        const double v = inner_objective(func, lambda, d, x, w);
        if (v < best_val) {
          best_val = v;
          best = w;
        }
      }
    }
  }

  // Local refinement, coordinate-wise for the 2-D case.
  const double tol = step / 100.0;
  const int rounds = n == 1 ? 1 : 60;
  for (int r = 0; r < rounds; ++r) {
    const Vector before = best;
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector probe = best;
      auto along = [&](double t) {
        probe(i) = t;
        return inner_objective(func, lambda, d, x, probe);
      };
      const double lo = std::max(oc.grid_lo(i), best(i) - step);
      const double hi = std::min(oc.grid_hi(i), best(i) + step);
      best(i) = ternary(along, lo, hi, tol);
    }
    if ((best - before).lpNorm<Eigen::Infinity>() <= tol) break;
  }
  return best;
}

Vector fd_gradient(const SmoothedObjective& s, const Vector& x, const OracleConfig& oc) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + oc.fd_step;
    const double up = s.value(probe);
    probe(i) = x(i) - oc.fd_step;
    const double down = s.value(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * oc.fd_step);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reports

bool SuiteReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed || !p.gating; });
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << " (seed " << seed << ")\n";
  for (const auto& p : properties) {
    const char* tag = p.passed ? "PASS" : (p.gating ? "FAIL" : "INFO");
    os << "  [" << tag << "] " << std::left << std::setw(34) << p.name
       << " samples=" << p.samples << " max_slack=" << std::setprecision(6) << p.max_slack
       << " tol=" << p.tolerance << "\n";
  }
  os << (all_passed() ? "all properties passed" : "SOME PROPERTIES FAILED") << "\n";
  return os.str();
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << "suite,property,samples,max_slack,tolerance,passed,gating\n";
  os << std::setprecision(17);
  for (const auto& p : properties) {
    os << suite << ',' << p.name << ',' << p.samples << ',' << p.max_slack << ',' << p.tolerance
       << ',' << (p.passed ? 1 : 0) << ',' << (p.gating ? 1 : 0) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Suites

namespace {

// Accumulates the worst slack of one property.
struct Tracker {
  PropertyResult r;
  Tracker(std::string name, double tol) {
    r.name = std::move(name);
    r.tolerance = tol;
    r.max_slack = -std::numeric_limits<double>::infinity();
  }
  void add(double slack) {
    ++r.samples;
    if (std::isnan(slack)) {
      r.max_slack = slack;
      r.passed = false;
      return;
    }
    if (!std::isnan(r.max_slack)) r.max_slack = std::max(r.max_slack, slack);
    if (slack > r.tolerance) r.passed = false;
  }
  PropertyResult done() {
    if (r.samples == 0) r.max_slack = 0.0;
    return r;
  }
};

MetricMatrix random_metric(Rng& rng, Eigen::Index n, double m) {
  const Matrix g = [&] {
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = normal_vector(rng, n);
    return a;
  }();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  std::uniform_real_distribution<double> u(-std::log(m), std::log(m));
  Vector ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev(i) = std::exp(u(rng));
  return MetricMatrix::certify(q * ev.asDiagonal() * q.transpose(), m);
}

struct ScalarSetting {
  double d1, d2, m, lambda, mu;
};

SmoothedObjective example1_objective(const ScalarSetting& st) {
  return SmoothedObjective(example1_problem(),
                           SmoothingParams::make(st.lambda, st.mu, MetricMatrix::scalar(1, st.d1, st.m),
                                                 MetricMatrix::scalar(1, st.d2, st.m), st.m));
}

Vector scalar_vec(double v) { return Vector::Constant(1, v); }

std::vector<ScalarSetting> example1_settings(const SuiteOptions& o) {
  if (o.lambda || o.mu) {
    const double l = o.lambda.value_or(0.01), u = o.mu.value_or(0.01);
    return {{1.0, 1.0, 1.0, l, u}};
  }
  return {{1.0, 1.0, 1.0, 0.01, 0.01}, {1.0, 1.0, 1.0, 0.02, 0.01}, {1.5, 2.0, 2.0, 0.04, 0.01}};
}

SuiteReport suite_metric(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker bounds("norm_bounds", 1e-10), even("norm_evenness", 0.0),
      rejects("certify_rejects_out_of_range", 0.0), eta_mono("eta_strictly_decreasing", 0.0),
      eta1_mono("eta1_nonincreasing", 1e-12);
  Rng rng(derive_seed(o.seed, "metric"));
  const double ms[] = {1.0, 1.5, 2.0, 4.0};
  const Eigen::Index dims[] = {1, 2, 3, 5};
  for (int s = 0; s < o.samples; ++s) {
    const double m = ms[s % 4];
    const Eigen::Index n = dims[(s / 4) % 4];
    const MetricMatrix d = random_metric(rng, n, m);
    const Vector x = normal_vector(rng, n);
    const double v = metric_norm_sq(x, d), nx = x.squaredNorm();
    bounds.add(std::max(nx / m - v, v - m * nx));
    even.add(std::abs(v - metric_norm_sq(-x, d)));

    // An eigenvalue pushed just outside [1/m, m] must be rejected.
    Matrix bad = d.entries();
    bad(0, 0) += 2.0 * m;
    bool threw = false;
    try {
      (void)MetricMatrix::certify(bad, m);
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::EigenvalueOutOfRange;
    }
    rejects.add(threw ? 0.0 : 1.0);

    std::uniform_real_distribution<double> u(1e-3, 1.0);
    const double l1 = u(rng), l2 = u(rng), mu1 = u(rng), mu2 = u(rng);
    const double lo_l = std::min(l1, l2), hi_l = std::max(l1, l2);
    const double lo_u = std::min(mu1, mu2), hi_u = std::max(mu1, mu2);
    const MetricMatrix one = MetricMatrix::identity(1);
    auto p = [&](double l, double mu) { return SmoothingParams::make(l, mu, one, one, m); };
    if (hi_l > lo_l) {
      eta_mono.add(eta(p(hi_l, lo_u)) < eta(p(lo_l, lo_u)) ? 0.0 : 1.0);
      eta1_mono.add((eta1(p(hi_l, lo_u)) - eta1(p(lo_l, lo_u))) / eta1(p(lo_l, lo_u)));
    }
    if (hi_u > lo_u) {
      eta_mono.add(eta(p(lo_l, hi_u)) < eta(p(lo_l, lo_u)) ? 0.0 : 1.0);
      eta1_mono.add((eta1(p(lo_l, hi_u)) - eta1(p(lo_l, lo_u))) / eta1(p(lo_l, lo_u)));
    }
  }
  rep.properties = {bounds.done(), even.done(), rejects.done(), eta_mono.done(), eta1_mono.done()};
  return rep;
}

SuiteReport suite_prox(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker vs_grid("analytic_vs_grid_oracle", 1e-5), vs_bis("analytic_vs_bisection", 1e-8),
      resid("optimality_residual", 0.0), firm("firm_optimality", 1e-8),
      lips("lipschitz_le_m_squared", 1e-8), odd("abs_cubed_odd_symmetry", 0.0),
      strong("metric_function_strong_convexity", 1e-8), nd("nd_inner_solver_vs_closed_form", 1e-8);
  const ConvexFunction fns[] = {catalog::abs_cubed(), catalog::abs()};
  const double dm[][2] = {{1.0, 1.0}, {1.5, 2.0}, {2.0, 2.0}};
  const double lambdas[] = {0.01, 0.1, 0.5};
  OracleConfig oc;
  oc.grid_step = 1e-3;

  for (const auto& fn : fns) {
    Rng rng(derive_seed(o.seed, "prox:" + fn.name()));
    for (int s = 0; s < o.samples; ++s) {
      const double d = dm[s % 3][0], m = dm[s % 3][1];
      const double lam = lambdas[(s / 3) % 3];
      const MetricMatrix D = MetricMatrix::scalar(1, d, m);
      const Vector x = uniform_vector(rng, 1, -3.0, 3.0);
      const ProxResult pr = prox(fn, lam, D, x);
      const Vector& w = pr.point;

      vs_grid.add(std::abs(w(0) - brute_force_prox(fn, lam, D, x, oc)(0)));
      ProxRequest req{&fn, lam, &D, x};
      vs_bis.add(std::abs(w(0) - prox_bisection(req).point(0)));

      // Residual via the subgradient where g is differentiable at w.
      if (w(0) != 0.0 || fn.name() == "abs_cubed") {
        const double r = std::abs(fn.subgrad(w)(0) + d * (w(0) - x(0)) / lam);
        resid.add(r - 1e-6 * (1.0 + std::abs(x(0))));
      }

      const Vector u = D.apply(x - w) / lam;
      for (int k = 0; k < 5; ++k) {
        const Vector v = uniform_vector(rng, 1, -3.0, 3.0);
        firm.add(fn.eval(w) + u.dot(v - w) - fn.eval(v));
      }

      const Vector y = uniform_vector(rng, 1, -3.0, 3.0);
      if ((x - y).norm() > 0.0) {
        const double ratio = (w - prox(fn, lam, D, y).point).norm() / (x - y).norm();
        lips.add(ratio - m * m);
      }
      if (fn.name() == "abs_cubed") odd.add(std::abs(prox(fn, lam, D, -x).point(0) + w(0)));

      // The metric function z -> h(z, x) is strongly convex with modulus 1/(lambda m).
      const Vector z1 = uniform_vector(rng, 1, -3.0, 3.0);
      const Vector z2 = uniform_vector(rng, 1, -3.0, 3.0);
      const Vector grad = fn.subgrad(z1) + D.apply(z1 - x) / lam;
      const double lhs = metric_function(fn, lam, D, z2, x) - metric_function(fn, lam, D, z1, x);
      const double rhs = grad.dot(z2 - z1) + (z2 - z1).squaredNorm() / (2.0 * lam * m);
      strong.add(rhs - lhs);
    }
  }

  // n-D: closed-form quadratic prox against the generic inner solver.
  Rng rng(derive_seed(o.seed, "prox:quadratic"));
  for (int s = 0; s < std::max(1, o.samples / 10); ++s) {
    const Eigen::Index n = 3;
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = normal_vector(rng, n);
    const Vector b = normal_vector(rng, n);
    const ConvexFunction q = catalog::quadratic(a, b);
    const ConvexFunction q_plain = ConvexFunction("quadratic_oracle_only", n, [&q](const Vector& v) {
                                     return q.eval(v);
                                   }).with_subgrad([&q](const Vector& v) { return q.subgrad(v); });
    const MetricMatrix D = random_metric(rng, n, 2.0);
    const Vector x = normal_vector(rng, n);
    const double lam = 0.1 + 0.9 * (s % 3) / 2.0;
    const Vector closed = prox(q, lam, D, x).point;
    ProxRequest req{&q_plain, lam, &D, x};
    nd.add((closed - prox_inner_descent(req).point).lpNorm<Eigen::Infinity>());
  }

  rep.properties = {vs_grid.done(), vs_bis.done(), resid.done(), firm.done(),
                    lips.done(),    odd.done(),    strong.done(), nd.done()};
  return rep;
}

SuiteReport suite_envelope(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker dom("envelope_domination", 1e-10), argmin("argmin_preservation", 1e-3),
      identity("smoothed_identity_remark", 1e-10), inf_equal("inf_comparison_equal_params", 1e-6),
      inf_cmp("inf_comparison_lambda_ge_m2mu", 1e-6),
      sandwich("sandwich_bounds", 1e-9), radius("eps_approx_radius", 1e-10);
  Rng rng(derive_seed(o.seed, "envelope"));

  const ConvexFunction fns[] = {catalog::abs_cubed(), catalog::abs()};
  const double grid_step = 1e-3;
  for (const auto& st : example1_settings(o)) {
    const SmoothedObjective S = example1_objective(st);
    const SmoothingParams& p = S.params();

    for (int s = 0; s < o.samples; ++s) {
      const Vector x = uniform_vector(rng, 1, -3.0, 3.0);
      const SmoothedPoint pt = S.evaluate(x);
      dom.add(pt.env_g - S.problem().g().eval(x));
      dom.add(pt.env_f - S.problem().f().eval(x));

      const double rebuilt = S.phi(x) + metric_function(S.problem().g(), p.lambda, p.d1, pt.prox_g, x) -
                             metric_function(S.problem().f(), p.mu, p.d2, pt.prox_f, x);
      identity.add(std::abs(pt.value() - rebuilt));

      if (p.sandwich_admissible()) {
        const SandwichBounds b = sandwich_bounds(S, x);
        sandwich.add(std::max(b.lower - pt.value(), pt.value() - b.upper));
      }

      // zbar near the prox point: |zbar - z|^2 <= 2 m lambda eps with eps the metric gap.
      std::uniform_real_distribution<double> u(-0.1, 0.1);
      const Vector zbar = pt.prox_g + Vector::Constant(1, u(rng));
      const ConvexFunction& g = S.problem().g();
      const double eps = std::abs(metric_function(g, p.lambda, p.d1, zbar, x) -
                                  metric_function(g, p.lambda, p.d1, pt.prox_g, x));
      const EpsilonApproxResult ea =
          epsilon_approx_check(g, p.lambda, p.d1, p.m, pt.prox_g, zbar, x, eps);
      radius.add(ea.dist_sq - ea.radius_bound);
    }

    // Grid scans.
    double min_phi = std::numeric_limits<double>::infinity();
    double min_smooth = std::numeric_limits<double>::infinity();
    const MetricMatrix* mets[] = {&p.d1, &p.d2};
    const double params[] = {p.lambda, p.mu};
    double best_env[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double best_g[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double arg_env[2] = {0, 0}, arg_g[2] = {0, 0};
    for (long k = 0; k <= 6000; ++k) {
      const Vector x = scalar_vec(-3.0 + k * grid_step);
      min_phi = std::min(min_phi, S.phi(x));
      const SmoothedPoint pt = S.evaluate(x);
      min_smooth = std::min(min_smooth, pt.value());
      for (int i = 0; i < 2; ++i) {
        const double e = envelope_value(fns[i], params[i], *mets[i], x);
        const double gv = fns[i].eval(x);
        if (e < best_env[i]) {
          best_env[i] = e;
          arg_env[i] = x(0);
        }
        if (gv < best_g[i]) {
          best_g[i] = gv;
          arg_g[i] = x(0);
        }
      }
    }
    for (int i = 0; i < 2; ++i) argmin.add(std::abs(arg_env[i] - arg_g[i]));
    // The infimum comparison is exact when both envelopes use the same
    // parameter and metric. With lambda > mu the smoothed minimum sits about
    // (lambda/d1 - mu/d2)/2 below the true one, so the general claim is only
    // reported.
    if (p.lambda == p.mu && (p.d1.entries() - p.d2.entries()).norm() == 0.0) {
      inf_equal.add(min_phi - min_smooth);
    }
    if (p.sandwich_admissible()) inf_cmp.add(min_phi - min_smooth);
  }
  inf_cmp.r.gating = false;
  rep.properties = {dom.done(),       argmin.done(),  identity.done(), inf_equal.done(),
                    inf_cmp.done(),   sandwich.done(), radius.done()};
  return rep;
}

SuiteReport suite_gradient(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker fd1("fd_example1", 1e-4), fdn("fd_quadratic_l1", 1e-4), lip("eta_lipschitz", 1e-8),
      quad("eta1_inner_product_bound", 1e-8);
  OracleConfig oc;

  auto rel = [](const Vector& a, const Vector& b) {
    return (a - b).norm() / std::max(b.norm(), 1.0);
  };
  auto pairs = [&](const SmoothedObjective& S, Rng& rng, auto&& draw, int count) {
    for (int s = 0; s < count; ++s) {
      const Vector x = draw(rng), y = draw(rng);
      const Vector gx = S.gradient(x), gy = S.gradient(y);
      const double dn = (x - y).norm();
      lip.add((gx - gy).norm() - S.eta() * dn);
      quad.add(std::abs((gx - gy).dot(x - y)) - S.eta1() * dn * dn);
    }
  };

  for (const auto& st : example1_settings(o)) {
    const SmoothedObjective S = example1_objective(st);
    Rng rng(derive_seed(o.seed, "gradient:example1"));
    auto draw = [](Rng& r) { return uniform_vector(r, 1, -3.0, 3.0); };
    for (int s = 0; s < o.samples; ++s) {
      const Vector x = draw(rng);
      fd1.add(rel(fd_gradient(S, x, oc), S.gradient(x)));
    }
    pairs(S, rng, draw, o.samples);
  }

  // n-D catalog: 0.5|Aw - b|^2 minus l1, under random metrics.
  Rng rng(derive_seed(o.seed, "gradient:nd"));
  const Eigen::Index dims[] = {2, 5};
  for (Eigen::Index n : dims) {
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = normal_vector(rng, n);
    const Vector b = normal_vector(rng, n);
    const double m = 2.0;
    const SmoothedObjective S(DCProblem(catalog::quadratic(a, b), catalog::l1(n)),
                              SmoothingParams::make(0.4, 0.1, random_metric(rng, n, m),
                                                    random_metric(rng, n, m), m));
    auto draw = [n](Rng& r) { return normal_vector(r, n); };
    for (int s = 0; s < o.samples / 2; ++s) {
      const Vector x = draw(rng);
      fdn.add(rel(fd_gradient(S, x, oc), S.gradient(x)));
    }
    pairs(S, rng, draw, o.samples / 2);
  }
  rep.properties = {fd1.done(), fdn.done(), lip.done(), quad.done()};
  return rep;
}

std::vector<Vector> starting_points(const SuiteOptions& o, const std::string& stream) {
  Rng rng(derive_seed(o.seed, stream));
  std::vector<Vector> pts = {scalar_vec(1.0)};
  for (int i = 0; i < 2; ++i) pts.push_back(uniform_vector(rng, 1, -3.0, 3.0));
  return pts;
}

SuiteReport suite_descent_gd(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker mono("monotone_decrease", 1e-10), desc("descent_inequality", 1e-10),
      rate("residual_rate_bound", 1e-10), bounded("bounded_iterates", 0.0),
      conv("converged", 0.0);
  std::vector<double> gammas = {0.5, 1.0, 1.8};
  if (o.gamma) gammas = {*o.gamma};
  std::vector<ScalarSetting> settings = example1_settings(o);
  if (!o.lambda && !o.mu) settings.resize(2);
  for (const auto& st : settings) {
    const SmoothedObjective S = example1_objective(st);
    for (double gamma : gammas) {
      SolverConfig cfg;
      cfg.algo = Algorithm::GradientDescent;
      cfg.gamma = gamma;
      cfg.record_trace = false;
      for (const Vector& x0 : starting_points(o, "descent_gd")) {
        const SolverResult r = run_gd(S, cfg, x0);
        const MonitorSummary& m = r.monitors;
        mono.add(m.max_monotone_slack);
        desc.add(m.max_descent_slack);
        rate.add(m.min_grad_gap_sq - m.residual_rate_bound);
        bounded.add(m.boundedness_ok ? 0.0 : 1.0);
        conv.add(r.status == SolverStatus::Converged ? 0.0 : 1.0);
      }
    }
  }
  rep.properties = {mono.done(), desc.done(), rate.done(), bounded.done(), conv.done()};
  return rep;
}

SuiteReport suite_descent_inertial(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker desc("inertial_descent_inequality", 1e-10), psi("psi_recursion", 1e-10),
      sum("summable_steps", 1e-10), reduction("theta_zero_reduces_to_gd", 0.0),
      conv("converged", 0.0);
  const double gamma = o.gamma.value_or(0.9);
  for (const auto& st : example1_settings(o)) {
    const SmoothedObjective S = example1_objective(st);
    SolverConfig cfg;
    cfg.algo = Algorithm::Inertial;
    cfg.gamma = gamma;
    cfg.record_trace = false;
    for (const Vector& x0 : starting_points(o, "descent_inertial")) {
      const SolverResult r = run_inertial(S, cfg, x0, x0);
      const MonitorSummary& m = r.monitors;
      desc.add(m.max_descent_slack);
      psi.add(m.max_psi_slack);
      sum.add(m.sum_step_sq - m.geometric_sum_bound);
      conv.add(r.status == SolverStatus::Converged ? 0.0 : 1.0);
    }

    SolverConfig zero = cfg;
    zero.theta_policy = ThetaPolicy::zero();
    zero.record_trace = true;
    SolverConfig gd = zero;
    gd.algo = Algorithm::GradientDescent;
    const Vector x0 = scalar_vec(1.0);
    const SolverResult a = run_inertial(S, zero, x0, x0);
    const SolverResult b = run_gd(S, gd, x0);
    bool same = a.trace.size() == b.trace.size() && a.final_x == b.final_x;
    for (size_t i = 0; same && i < a.trace.size(); ++i) {
      same = a.trace[i].x == b.trace[i].x && a.trace[i].phi_smooth == b.trace[i].phi_smooth &&
             a.trace[i].step_norm == b.trace[i].step_norm;
    }
    reduction.add(same ? 0.0 : 1.0);
  }
  rep.properties = {desc.done(), psi.done(), sum.done(), reduction.done(), conv.done()};
  return rep;
}

SuiteReport suite_cluster(const SuiteOptions& o) {
  SuiteReport rep;
  Tracker trend("phi_gap_nonincreasing", 0.0), ratio("phi_gap_final_le_first_over_5", 0.0),
      eps_trend("eps_needed_shrinks", 0.0), ident("prox_gap_identity", 1e-10),
      radius("eps_radius_at_cluster_point", 1e-10), equal("equal_operators_zero_residual", 0.0);
  const double mu = o.mu.value_or(0.01);
  const double lambdas[] = {2.0 * mu, 1.5 * mu, 1.1 * mu, 1.01 * mu};
  SolverConfig cfg;
  cfg.algo = Algorithm::GradientDescent;
  cfg.gamma = o.gamma.value_or(1.8);
  cfg.record_trace = false;

  std::vector<double> gaps, eps;
  for (double lam : lambdas) {
    const SmoothedObjective S = example1_objective({1.0, 1.0, 1.0, lam, mu});
    const SolverResult r = run_gd(S, cfg, scalar_vec(1.0));
    const ClusterPointReport c = cluster_point_report(S, r.final_x);
    gaps.push_back(std::abs(c.phi_gap));
    eps.push_back(c.eps_needed);

    const SmoothedPoint pt = S.evaluate(r.final_x);
    const ConvexFunction& g = S.problem().g();
    const SmoothingParams& p = S.params();
    const double e = std::abs(metric_function(g, p.lambda, p.d1, pt.prox_f, r.final_x) -
                              metric_function(g, p.lambda, p.d1, pt.prox_g, r.final_x));
    const EpsilonApproxResult ea =
        epsilon_approx_check(g, p.lambda, p.d1, p.m, pt.prox_g, pt.prox_f, r.final_x, e);
    radius.add(ea.dist_sq - ea.radius_bound);
  }
  for (size_t i = 1; i < gaps.size(); ++i) trend.add(gaps[i] - gaps[i - 1]);
  ratio.add(gaps.back() - gaps.front() / 5.0);
  eps_trend.add(eps.back() - eps.front());

  // prox_g - prox_f = -(lambda D1^-1 - mu D2^-1) y - mu D2^-1 (y - z) holds at every x.
  Rng rng(derive_seed(o.seed, "cluster"));
  for (const auto& st : example1_settings(o)) {
    const SmoothedObjective S = example1_objective(st);
    const SmoothingParams& p = S.params();
    const Matrix op = p.lambda * p.d1.inverse() - p.mu * p.d2.inverse();
    for (int s = 0; s < o.samples; ++s) {
      const Vector x = uniform_vector(rng, 1, -3.0, 3.0);
      const SmoothedPoint pt = S.evaluate(x);
      const Vector rhs = -(op * pt.grad_g) - p.mu * p.d2.inverse() * (pt.grad_g - pt.grad_f);
      ident.add((pt.prox_g - pt.prox_f - rhs).norm());
    }
  }

  const SmoothedObjective same = example1_objective({1.0, 1.0, 1.0, mu, mu});
  const ClusterPointReport c = cluster_point_report(same, run_gd(same, cfg, scalar_vec(1.0)).final_x);
  equal.add(std::max(c.identity_residual, c.operator_distance));

  rep.properties = {trend.done(), ratio.done(), eps_trend.done(), ident.done(), radius.done(), equal.done()};
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"metric",     "prox",             "envelope", "gradient",
                                                 "descent_gd", "descent_inertial", "cluster"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  using SuiteFn = SuiteReport (*)(const SuiteOptions&);
  static const std::map<std::string, SuiteFn> suites = {
      {"metric", suite_metric},         {"prox", suite_prox},
      {"envelope", suite_envelope},     {"gradient", suite_gradient},
      {"descent_gd", suite_descent_gd}, {"descent_inertial", suite_descent_inertial},
      {"cluster", suite_cluster},
  };
  const auto it = suites.find(name);
  if (it == suites.end()) throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
  if (opts.samples <= 0) throw Error(ErrorCode::InvalidArgument, "suite samples must be positive");
  SuiteReport rep = it->second(opts);
  rep.suite = name;
  rep.seed = opts.seed;
  return rep;
}

}  // namespace dcm
