#include "dcmoreau/convex.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dcmoreau/error.hpp"
#include "dcmoreau/random.hpp"

namespace dcm {

bool BoxDomain::contains(const Vector& x) const {
  return ((x - lo).array() >= 0.0).all() && ((hi - x).array() >= 0.0).all();
}

bool BoxDomain::contains(const BoxDomain& other) const {
  return ((other.lo - lo).array() >= 0.0).all() && ((hi - other.hi).array() >= 0.0).all();
}

Vector BoxDomain::project(const Vector& x) const {
  return x.cwiseMax(lo).cwiseMin(hi);
}

ConvexFunction::ConvexFunction(std::string name, Eigen::Index dim, EvalFn eval)
    : name_(std::move(name)), dim_(dim), eval_(std::move(eval)) {
  if (dim_ <= 0) throw Error(ErrorCode::InvalidArgument, "function dimension must be positive");
  if (!eval_) throw Error(ErrorCode::InvalidArgument, "function needs an evaluation oracle");
}

ConvexFunction& ConvexFunction::with_subgrad(SubgradFn fn) {
  subgrad_ = std::move(fn);
  return *this;
}

ConvexFunction& ConvexFunction::with_analytic_prox(AnalyticProxFn fn) {
  analytic_prox_ = std::move(fn);
  return *this;
}

ConvexFunction& ConvexFunction::with_domain(BoxDomain box) {
  if (box.lo.size() != dim_ || box.hi.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "domain box dimension mismatch");
  }
  domain_ = std::move(box);
  return *this;
}

static void check_dim(const Vector& x, Eigen::Index dim) {
  if (x.size() != dim) {
    std::ostringstream os;
    os << "expected dimension " << dim << ", got " << x.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double ConvexFunction::eval(const Vector& x) const {
  check_dim(x, dim_);
  return eval_(x);
}

Vector ConvexFunction::subgrad(const Vector& x) const {
  check_dim(x, dim_);
  if (!subgrad_) throw Error(ErrorCode::MissingOracles, name_ + " has no subgradient oracle");
  return subgrad_(x);
}

std::optional<Vector> ConvexFunction::analytic_prox(double lambda, const MetricMatrix& d,
                                                    const Vector& x) const {
  check_dim(x, dim_);
  if (d.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "metric dimension mismatch");
  if (!analytic_prox_) return std::nullopt;
  return analytic_prox_(lambda, d, x);
}

DCProblem::DCProblem(ConvexFunction g, ConvexFunction f, std::optional<CoercivityWitness> witness)
    : g_(std::move(g)), f_(std::move(f)), witness_(std::move(witness)) {
  if (g_.dim() != f_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "g and f have different dimensions");
  }
  // dom g must lie in dom f; only box domains are representable.
  if (f_.domain()) {
    if (!g_.domain() || !f_.domain()->contains(*g_.domain())) {
      throw Error(ErrorCode::DomainMismatch,
                  "dom g is not contained in dom f (" + g_.name() + " vs " + f_.name() + ")");
    }
  }
  if (witness_ && !witness_->phi) {
    throw Error(ErrorCode::InvalidArgument, "coercivity witness needs a phi oracle");
  }
}

double phi_value(const DCProblem& p, const Vector& x) {
  return p.g().eval(x) - p.f().eval(x);
}

namespace catalog {

double soft_threshold(double x, double t) {
  const double a = std::abs(x) - t;
  return a > 0.0 ? std::copysign(a, x) : 0.0;
}

double abs_cubed_prox(double x, double lambda, double d) {
  // Positive root of 3 w^2 + (d/lambda)(w - |x|) = 0, written as
  // 2 d |x| / (d + sqrt(d^2 + 12 lambda d |x|)) to avoid cancellation.
  const double a = std::abs(x);
  const double w = 2.0 * d * a / (d + std::sqrt(d * d + 12.0 * lambda * d * a));
  return std::copysign(w, x);
}

namespace {

Vector sign_subgrad(const Vector& x) {
  Vector s(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) s(i) = x(i) > 0.0 ? 1.0 : (x(i) < 0.0 ? -1.0 : 0.0);
  return s;
}

std::optional<Vector> l1_prox(double lambda, const MetricMatrix& d, const Vector& x) {
  if (!d.is_diagonal()) return std::nullopt;
  Vector w(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    w(i) = soft_threshold(x(i), lambda / d.entries()(i, i));
  }
  return w;
}

}  // namespace

ConvexFunction abs() {
  ConvexFunction fn("abs", 1, [](const Vector& x) { return std::abs(x(0)); });
  fn.with_subgrad(sign_subgrad).with_analytic_prox(l1_prox);
  return fn;
}

ConvexFunction abs_cubed() {
  ConvexFunction fn("abs_cubed", 1, [](const Vector& x) {
    const double a = std::abs(x(0));
    return a * a * a;
  });
  fn.with_subgrad([](const Vector& x) {
      Vector s(1);
      s(0) = 3.0 * x(0) * std::abs(x(0));
      return s;
    })
      .with_analytic_prox([](double lambda, const MetricMatrix& d, const Vector& x) {
        Vector w(1);
        w(0) = abs_cubed_prox(x(0), lambda, d.entries()(0, 0));
        return std::optional<Vector>(w);
      });
  return fn;
}

ConvexFunction quadratic(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic: A rows must match b length");
  }
  const Matrix ata = a.transpose() * a;
  const Vector atb = a.transpose() * b;
  ConvexFunction fn("quadratic", a.cols(), [a, b](const Vector& x) {
    return 0.5 * (a * x - b).squaredNorm();
  });
  fn.with_subgrad([a, b](const Vector& x) -> Vector { return a.transpose() * (a * x - b); })
      .with_analytic_prox([ata, atb](double lambda, const MetricMatrix& d, const Vector& x) {
        const Matrix lhs = d.entries() + lambda * ata;
        const Vector rhs = d.apply(x) + lambda * atb;
        Eigen::LLT<Matrix> llt(lhs);
        if (llt.info() != Eigen::Success) {
          throw Error(ErrorCode::SingularSystem, "quadratic prox: system is not positive definite");
        }
        Vector w = llt.solve(rhs);
        if (!w.allFinite()) {
          throw Error(ErrorCode::SingularSystem, "quadratic prox: non-finite solution");
        }
        return std::optional<Vector>(std::move(w));
      });
  return fn;
}

ConvexFunction l1(Eigen::Index dim) {
  ConvexFunction fn("l1", dim, [](const Vector& x) { return x.lpNorm<1>(); });
  fn.with_subgrad(sign_subgrad).with_analytic_prox(l1_prox);
  return fn;
}

ConvexFunction box_indicator(const Vector& lo, const Vector& hi) {
  if (lo.size() != hi.size()) throw Error(ErrorCode::DimensionMismatch, "box: lo/hi size mismatch");
  if (((hi - lo).array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "box: lo must be <= hi componentwise");
  }
  BoxDomain box{lo, hi};
  ConvexFunction fn("box", lo.size(), [box](const Vector& x) {
    return box.contains(x) ? 0.0 : std::numeric_limits<double>::infinity();
  });
  // 0 lies in the normal cone at every point of the box.
  fn.with_subgrad([](const Vector& x) -> Vector { return Vector::Zero(x.size()); })
      .with_analytic_prox([box](double, const MetricMatrix& d, const Vector& x) {
        if (!d.is_diagonal()) return std::optional<Vector>();
        return std::optional<Vector>(box.project(x));
      })
      .with_domain(box);
  return fn;
}

ConvexFunction constant(Eigen::Index dim, double value) {
  ConvexFunction fn("constant", dim, [value](const Vector&) { return value; });
  fn.with_subgrad([](const Vector& x) -> Vector { return Vector::Zero(x.size()); })
      .with_analytic_prox([](double, const MetricMatrix&, const Vector& x) {
        return std::optional<Vector>(x);
      });
  return fn;
}

}  // namespace catalog

DCProblem example1_problem() {
  CoercivityWitness w{[](double t) { return 0.5 * t * t * t; }, -2.0 / 3.0};
  return DCProblem(catalog::abs_cubed(), catalog::abs(), w);
}

ConvexityReport spot_check_convexity(const ConvexFunction& fn, int samples, std::uint64_t seed,
                                     double radius) {
  ConvexityReport rep;
  Rng rng(derive_seed(seed, "convexity:" + fn.name()));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Vector x = uniform_vector(rng, fn.dim(), -radius, radius);
    Vector y = uniform_vector(rng, fn.dim(), -radius, radius);
    if (fn.domain()) {
      x = fn.domain()->project(x);
      y = fn.domain()->project(y);
    }
    const double t = unit(rng);
    const double fx = fn.eval(x), fy = fn.eval(y);
    const double mid = fn.eval(t * x + (1.0 - t) * y);
    rep.max_convexity_violation =
        std::max(rep.max_convexity_violation, mid - (t * fx + (1.0 - t) * fy));
    if (fn.has_subgrad()) {
      const double lin = fx + fn.subgrad(x).dot(y - x);
      rep.max_subgrad_violation = std::max(rep.max_subgrad_violation, lin - fy);
    }
    ++rep.samples;
  }
  rep.passed = rep.max_convexity_violation <= 1e-9 && rep.max_subgrad_violation <= 1e-9;
  return rep;
}

bool spot_check_coercivity(const DCProblem& p, int samples, std::uint64_t seed, double radius) {
  if (!p.witness()) return true;
  Rng rng(derive_seed(seed, "coercivity"));
  for (int s = 0; s < samples; ++s) {
    const Vector x = uniform_vector(rng, p.dim(), -radius, radius);
    if (phi_value(p, x) < p.witness()->phi(x.norm()) + p.witness()->beta - 1e-12) return false;
  }
  return true;
}

}  // namespace dcm
