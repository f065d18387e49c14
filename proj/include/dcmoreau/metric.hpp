#pragma once

#include <memory>

#include "dcmoreau/types.hpp"

namespace dcm {

/// Symmetric positive definite matrix whose spectrum has been certified to lie
/// in [1/m, m]. Immutable after construction and cheap to copy.
class MetricMatrix {
 public:
  /// Symmetrizes `entries`, then certifies the spectrum against `bound_m`.
  /// Throws NotSymmetric, NotPositiveDefinite or EigenvalueOutOfRange.
  static MetricMatrix certify(const Matrix& entries, double bound_m);

  static MetricMatrix identity(Eigen::Index dim);
  /// d * I, certified against `bound_m`.
  static MetricMatrix scalar(Eigen::Index dim, double d, double bound_m);

  Eigen::Index dim() const { return state_->entries.rows(); }
  const Matrix& entries() const { return state_->entries; }
  const Matrix& inverse() const { return state_->inverse; }
  double bound_m() const { return state_->bound_m; }
  double min_eigenvalue() const { return state_->min_eig; }
  double max_eigenvalue() const { return state_->max_eig; }
  bool is_diagonal() const { return state_->diagonal; }

  /// x^T D x.
  double norm_sq(const Vector& x) const;
  Vector apply(const Vector& x) const;

 private:
  struct State {
    Matrix entries;
    Matrix inverse;
    double bound_m = 1.0;
    double min_eig = 1.0;
    double max_eig = 1.0;
    bool diagonal = true;
  };
  explicit MetricMatrix(std::shared_ptr<const State> s) : state_(std::move(s)) {}

  std::shared_ptr<const State> state_;
};

/// Free-function spelling of MetricMatrix::certify.
inline MetricMatrix validate_metric(const Matrix& entries, double bound_m) {
  return MetricMatrix::certify(entries, bound_m);
}

/// x^T D x; throws DimensionMismatch.
double metric_norm_sq(const Vector& x, const MetricMatrix& d);

/// Smoothing parameters (lambda, mu, D1, D2, m) shared by both envelopes.
struct SmoothingParams {
  double lambda = 1.0;
  double mu = 1.0;
  MetricMatrix d1 = MetricMatrix::identity(1);
  MetricMatrix d2 = MetricMatrix::identity(1);
  double m = 1.0;

  /// Validates positivity, common dimension and d_i.bound_m <= m.
  static SmoothingParams make(double lambda, double mu, MetricMatrix d1,
                              MetricMatrix d2, double m);

  Eigen::Index dim() const { return d1.dim(); }

  /// lambda >= m^2 mu, the precondition of the two-sided envelope bounds.
  bool sandwich_admissible() const;
};

/// (1/lambda + 1/mu)(m + m^3): Lipschitz certificate of the smoothed gradient.
double eta(const SmoothingParams& p);

/// max{|(-m^4 mu + mu - lambda m^2)/(lambda mu m)|,
///     |(lambda m^4 + mu m^2 - lambda)/(lambda mu m)|}.
double eta1(const SmoothingParams& p);

}  // namespace dcm
