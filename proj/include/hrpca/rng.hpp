/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/rng.hpp
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */

#pragma once

#include "hrpca/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>

namespace hrpca {

/// One splitmix64 step: advances @p state and returns the next output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/**
 * @brief Derives an independent stream seed from a base seed and two stream
 *        coordinates (e.g. cell index and trial index of a sweep).
 *
 * Splittable in the sense that changing any argument decorrelates the result,
 * so enumerating (a, b) pairs under one base seed yields unrelated streams.
 */
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = base;
  std::uint64_t h = splitmix64_next(state);
  state ^= a;
  h ^= splitmix64_next(state);
  state ^= b;
  h ^= splitmix64_next(state);
  return h;
}

/**
 * @brief Deterministic random engine with pinned draw semantics.
 *
 * All variates come from one std::mt19937_64 stream seeded directly with the
 * constructor argument; the 64-bit stream is bit-portable across platforms.
 * Draw accounting, relied on by code that must stay trace-compatible:
 *   - next_u64 / next_index consume one draw,
 *   - uniform01 / uniform consume one draw,
 *   - normal consumes exactly two draws (Box-Muller, cosine branch, no
 *     caching of the companion variate).
 */
class RandomEngine {
public:
  explicit RandomEngine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform index in [0, bound). bound must be positive.
  std::uint64_t next_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_index bound must be positive");
    return next_u64() % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("uniform bounds out of order");
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal variate; consumes exactly two 64-bit draws.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Vector of iid standard normals.
  Vec normal_vector(Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Uniform draw from the unit sphere in R^n (normalized gaussian vector).
  Vec unit_sphere_vector(Index n) {
    for (;;) {
      Vec v = normal_vector(n);
      const double norm = v.norm();
      if (norm > 1e-12) return v / norm;
    }
  }

private:
  std::mt19937_64 gen_;
};

/**
 * @brief Cumulative-inversion weighted pick with a single pre-drawn uniform.
 *
 * Returns the smallest index i whose cumulative weight exceeds u01 * total.
 * Entries with zero weight can never be selected. Throws if the weight vector
 * is empty, contains a negative or non-finite entry, sums to zero, or if u01
 * lies outside [0, 1).
 */
inline std::size_t weighted_pick(std::span<const double> weights, double u01) {
  if (weights.empty()) throw std::invalid_argument("weighted_pick: empty weight vector");
  if (!(u01 >= 0.0 && u01 < 1.0))
    throw std::invalid_argument("weighted_pick: u01 must lie in [0, 1)");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("weighted_pick: weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weighted_pick: weights sum to zero");

  const double r = u01 * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  bool seen_positive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      last_positive = i;
      seen_positive = true;
    }
    cum += weights[i];
    if (r < cum) return i;
  }
  // Floating-point slack can leave r barely >= total; fall back to the last
  // selectable entry.
  (void)seen_positive;
  return last_positive;
}

}  // namespace hrpca
