/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/baselines.hpp
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

#include <optional>
#include <vector>

namespace hrpca {

/// Standard PCA: top-d eigenvectors of the uncentered second moment
/// (1/n) sum y y^T. Exactly the removal loop's s = 0 candidate.
Basis pca_baseline(const ObservationSet& data, Index d);

/// Knobs of the trimmed multivariate-estimator baseline.
struct MvtConfig {
  /// Fraction of the kept set dropped per iteration; must lie in (0, 0.5).
  double trim_fraction = 0.05;
  /// Fixed number of fit-and-trim rounds; must be >= 1.
  int iterations = 10;
};

/// mvt() result: the recovered frame plus the kept-set size after each
/// round (kept_sizes.front() = n, one entry appended per round).
struct MvtResult {
  Basis basis;
  std::vector<Index> kept_sizes;
};

/**
 * @brief Trimmed multivariate-estimator baseline.
 *
 * Each round fits a mean and centered covariance on the kept set, then drops
 * the ceil(trim_fraction * kept) points with the largest Mahalanobis
 * distances (ties broken toward keeping the earlier index). The final frame
 * is the top-d of the kept set's uncentered second moment, so vanishing
 * trimming degenerates to pca_baseline. Throws "covariance ill-conditioned"
 * whenever a round's kept count fails to exceed the dimension (the centered
 * covariance is then singular by construction) or the covariance condition
 * number exceeds 1e12 — which is exactly what happens when n is not well
 * above m.
 */
MvtResult mvt(const ObservationSet& data, Index d, const MvtConfig& cfg = {});

/// Knobs of the projection-pursuit-style baseline.
struct PpConfig {
  /// Trim level of the candidate score; defaults to ceil(n / 2).
  std::optional<Index> trim_level;
};

/**
 * @brief Projection-pursuit approximation: candidate directions are the
 *        (deflated) data points themselves.
 *
 * For each of d rounds: normalize every nonzero current point into a
 * candidate direction, score each candidate by the trimmed variance
 * (1/n) * sum of the trim_level smallest squared projections over the
 * current points, keep the best scorer (lowest index on ties), and deflate
 * the data against it. Zero-norm points are skipped; a round with no
 * candidates at all raises an error. The returned frame is the
 * orthonormalized collection of winners. Scale-invariant in the data up to
 * the common factor: rescaling every point leaves the chosen directions
 * unchanged.
 */
Basis pp_approx(const ObservationSet& data, Index d, const PpConfig& cfg = {});

}  // namespace hrpca
