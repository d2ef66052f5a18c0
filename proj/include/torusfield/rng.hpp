#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "torusfield/common.hpp"

namespace torusfield {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: the same (master, keys...) always maps to the
// same stream, whatever thread happens to consume it.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(master);
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

/// Uniform point on S^2 from a normalised Gaussian triple.
inline Vec3 random_unit_vector(Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v(normal(engine), normal(engine), normal(engine));
    double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

}  // namespace torusfield
