#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace superlap::detail {

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform
/// (unlike std::uniform_real_distribution).
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 2.0 * unit_uniform(rng) - 1.0;
  return v;
}

}  // namespace superlap::detail
