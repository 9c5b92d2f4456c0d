/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/datagen.hpp
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

#include "hrpca/tailbound.hpp"
#include "hrpca/types.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace hrpca {

/**
 * @brief Recipe for a synthetic contaminated dataset.
 *
 * Authentic points are y = A x + v with A an m-by-d matrix whose d singular
 * values all equal sigma, x a d-vector of iid unit-variance draws from the
 * signal marginal, and v iid standard gaussian noise. Outliers lie exactly
 * on outlier_lines random unit directions (no noise), with coefficients
 * uniform on [-sigma * mag, sigma * mag]. The contaminated fraction is
 * lambda; t = round((1 - lambda) * n) points are authentic.
 */
struct GenSpec {
  Index n = 100;
  Index m = 100;
  Index d = 1;
  double lambda = 0.0;
  double sigma = 1.0;
  double mag = 1.0;
  /// Distinct outlier directions; outlier j rides line j mod outlier_lines.
  Index outlier_lines = 1;
  /// Marginal of the signal coefficients. Gaussian draws are exactly
  /// spherically symmetric for d > 1; uniform draws are coordinatewise (only
  /// the marginal, not the joint sphere-symmetry, is uniform). Empirical
  /// models are rejected: there is no defined sampler for them.
  TailModel::Kind signal_marginal = TailModel::Kind::gaussian;
  std::uint64_t seed = 0;
  /// Test hook: scales the additive noise; 0 produces noiseless signals.
  double noise_scale = 1.0;

  /// Number of authentic points t = round((1 - lambda) * n).
  Index authentic_count() const;
  /// Throws std::invalid_argument when any field is out of contract
  /// (lambda outside [0, 0.5), d outside [1, min(m, t - 1)], ...).
  void validate() const;
};

/**
 * @brief Everything a scorer or diagnostic needs to know about how a dataset
 *        was produced.
 *
 * Index lists refer to columns of the generated ObservationSet.
 * signal_coords holds the authentic points' latent x vectors, column q
 * belonging to authentic_indices[q]; outlier_dirs holds the unit line
 * directions (empty when the dataset has no outliers).
 */
struct GroundTruth {
  Mat A;
  std::vector<Index> authentic_indices;
  std::vector<Index> outlier_indices;
  Mat signal_coords;
  Mat outlier_dirs;
  GenSpec spec;
};

/**
 * @brief Draws a dataset from the recipe.
 *
 * Deterministic for a fixed spec: one engine seeded with spec.seed drives,
 * in order, the raw A entries (column-major), the outlier directions (only
 * when outliers exist), the signal coordinates (column-major), the noise
 * matrix (column-major), the outlier coefficients, and a Fisher-Yates
 * shuffle of the column order. A is rescaled through its SVD so every
 * singular value equals sigma.
 */
std::pair<ObservationSet, GroundTruth> generate(const GenSpec& spec);

/**
 * @brief Diagnostics for the high-dimensional noise-explosion effect.
 *
 * Over the authentic points: the mean noise norm |y - A x| (concentrates
 * around sqrt(m)) and the mean |cos| of the angle between y and the column
 * space of A (collapses toward 0 as m grows at fixed sigma — the reason
 * trimmed-variance scoring needs many directions, not one lucky point).
 */
struct NoiseDiagnostics {
  double mean_noise_norm = 0.0;
  double mean_abs_cos = 0.0;
};

NoiseDiagnostics noise_explosion_report(const GroundTruth& truth,
                                        const ObservationSet& data);

/**
 * @brief Writes the dataset as plain text: a header line
 *        `# n m d lambda seed` (values from the generating spec) followed by
 *        one whitespace-separated row per point. Doubles are printed
 *        shortest-round-trip, so reload is lossless. A JSON sidecar at
 *        `<path>.truth.json` stores the ground truth.
 */
void save_dataset(const std::filesystem::path& path, const ObservationSet& data,
                  const GroundTruth& truth);

/// Reads back a dataset file written by save_dataset (header checked against
/// the actual matrix shape).
ObservationSet load_dataset(const std::filesystem::path& path);

/// Reads the ground-truth sidecar of a dataset file. Throws if missing or
/// malformed.
GroundTruth load_truth(const std::filesystem::path& dataset_path);

/// Path of the sidecar belonging to a dataset file.
std::filesystem::path truth_sidecar_path(const std::filesystem::path& dataset_path);

}  // namespace hrpca
