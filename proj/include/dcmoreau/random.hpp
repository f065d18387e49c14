#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dcmoreau/types.hpp"

namespace dcm {

using Rng = std::mt19937_64;

/// Stream seed for a named consumer, so that independent properties draw from
/// independent streams regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline Vector uniform_vector(Rng& rng, Eigen::Index dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = u(rng);
  return v;
}

inline Vector normal_vector(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = n(rng);
  return v;
}

}  // namespace dcm
