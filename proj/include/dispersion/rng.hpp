// Copyright 2026 The dispersion authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DISPERSION_RNG_HPP
#define DISPERSION_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Core>

namespace dispersion {

// splitmix64 mixing step; used to whiten seeds and derive per-stream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream + 1));
}

// Deterministic RNG. The engine is std::mt19937_64 (bit-portable across
// standard libraries); the distributions are hand-rolled because the
// std:: distribution algorithms are implementation-defined and we promise
// seed-reproducible results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller, no cached second value.
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd gaussian_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian();
    return v;
  }

  // Uniform direction on the unit sphere in R^dim.
  Eigen::VectorXd sphere_direction(int dim) {
    Eigen::VectorXd v = gaussian_vector(dim);
    double norm = v.norm();
    while (norm == 0.0) {
      v = gaussian_vector(dim);
      norm = v.norm();
    }
    return v / norm;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dispersion

#endif  // DISPERSION_RNG_HPP
