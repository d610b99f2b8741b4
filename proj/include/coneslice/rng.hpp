#pragma once

// Counter-based seeding: every trial of a campaign owns an engine seeded from
// (campaign seed, trial index), so results do not depend on thread layout.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace coneslice {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

inline Engine trial_engine(std::uint64_t seed, std::uint64_t index) {
  return Engine(trial_seed(seed, index));
}

inline Eigen::VectorXd gaussian_vector(Engine& rng, int size, double sigma = 1.0) {
  std::normal_distribution<double> normal(0.0, sigma);
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = normal(rng);
  return v;
}

inline double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Log-uniform draw from [lo, hi].
inline double log_uniform(Engine& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace coneslice
