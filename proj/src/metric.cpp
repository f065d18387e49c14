#include "dcmoreau/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcmoreau/error.hpp"

namespace dcm {
namespace {

constexpr double kSymmetryTol = 1e-12;
// Relative slack on the [1/m, m] window so that exactly representable
// boundary cases (e.g. D = [2], m = 2) certify.
constexpr double kSpectrumSlack = 1e-12;

}  // namespace

MetricMatrix MetricMatrix::certify(const Matrix& entries, double bound_m) {
  if (!(bound_m >= 1.0) || !std::isfinite(bound_m)) {
    throw Error(ErrorCode::InvalidArgument, "metric bound m must be a finite value >= 1");
  }
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "metric matrix must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "metric matrix has non-finite entries");
  }
  const Eigen::Index n = entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(entries(i, j) - entries(j, i)) > kSymmetryTol) {
        std::ostringstream os;
        os << "metric matrix is not symmetric at (" << i << ", " << j << ")";
        throw Error(ErrorCode::NotSymmetric, os.str());
      }
    }
  }

  auto state = std::make_shared<State>();
  state->entries = 0.5 * (entries + entries.transpose());
  state->bound_m = bound_m;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(state->entries, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "eigensolve of metric matrix failed");
  }
  const auto& ev = eig.eigenvalues();
  state->min_eig = ev.minCoeff();
  state->max_eig = ev.maxCoeff();
  if (state->min_eig <= 0.0) {
    std::ostringstream os;
    os << "metric matrix is not positive definite (eigenvalue " << state->min_eig << ")";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  const double lo = (1.0 / bound_m) * (1.0 - kSpectrumSlack);
  const double hi = bound_m * (1.0 + kSpectrumSlack);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < lo || ev(i) > hi) {
      std::ostringstream os;
      os.precision(17);
      os << "eigenvalue " << ev(i) << " outside [" << 1.0 / bound_m << ", " << bound_m << "]";
      throw Error(ErrorCode::EigenvalueOutOfRange, os.str());
    }
  }

  const Matrix off = state->entries - Matrix(state->entries.diagonal().asDiagonal());
  state->diagonal = off.cwiseAbs().maxCoeff() == 0.0;
  if (state->diagonal) {
    state->inverse = Matrix(state->entries.diagonal().cwiseInverse().asDiagonal());
  } else {
    state->inverse = state->entries.llt().solve(Matrix::Identity(n, n));
  }
  return MetricMatrix(std::move(state));
}

MetricMatrix MetricMatrix::identity(Eigen::Index dim) {
  return certify(Matrix::Identity(dim, dim), 1.0);
}

MetricMatrix MetricMatrix::scalar(Eigen::Index dim, double d, double bound_m) {
  return certify(d * Matrix::Identity(dim, dim), bound_m);
}

double MetricMatrix::norm_sq(const Vector& x) const {
  return metric_norm_sq(x, *this);
}

Vector MetricMatrix::apply(const Vector& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector/metric dimension mismatch");
  }
  if (is_diagonal()) return entries().diagonal().cwiseProduct(x);
  return entries() * x;
}

double metric_norm_sq(const Vector& x, const MetricMatrix& d) {
  if (x.size() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector/metric dimension mismatch");
  }
  return std::max(0.0, x.dot(d.apply(x)));
}

SmoothingParams SmoothingParams::make(double lambda, double mu, MetricMatrix d1,
                                      MetricMatrix d2, double m) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "lambda and mu must be positive and finite");
  }
  if (!(m >= 1.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::InvalidArgument, "m must be a finite value >= 1");
  }
  if (d1.dim() != d2.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "D1 and D2 have different dimensions");
  }
  if (d1.bound_m() > m || d2.bound_m() > m) {
    throw Error(ErrorCode::InvalidArgument, "metric certificate exceeds the common bound m");
  }
  SmoothingParams p;
  p.lambda = lambda;
  p.mu = mu;
  p.d1 = std::move(d1);
  p.d2 = std::move(d2);
  p.m = m;
  return p;
}

bool SmoothingParams::sandwich_admissible() const {
  return lambda >= m * m * mu * (1.0 - 1e-12);
}

double eta(const SmoothingParams& p) {
  return (1.0 / p.lambda + 1.0 / p.mu) * (p.m + p.m * p.m * p.m);
}

double eta1(const SmoothingParams& p) {
  const double m = p.m, l = p.lambda, u = p.mu;
  const double m2 = m * m, m4 = m2 * m2;
  const double denom = l * u * m;
  const double a = std::abs((-m4 * u + u - l * m2) / denom);
  const double b = std::abs((l * m4 + u * m2 - l) / denom);
  return std::max(a, b);
}

}  // namespace dcm
