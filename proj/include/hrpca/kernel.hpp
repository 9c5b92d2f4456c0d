/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/kernel.hpp
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

#include "hrpca/hrpca.hpp"
#include "hrpca/kernel_fn.hpp"
#include "hrpca/types.hpp"

namespace hrpca {

/**
 * @brief Kernel centered with respect to a fixed anchor set:
 *        kc(a, b) = k(a, b) - mean_j k(a, y_j) - mean_i k(y_i, b)
 *                   + mean_ij k(y_i, y_j).
 *
 * Equivalent to shifting the feature map by the anchors' feature mean. The
 * anchor means are precomputed per query, so evaluating the centered kernel
 * costs anchors.size() + 1 base-kernel calls. Assumes k symmetric.
 */
KernelFn center_kernel(const KernelFn& kernel, const ObservationSet& anchors);

/// Matrix-side version of the same centering applied to a precomputed Gram
/// matrix of the anchor set: K -> K - rowmean - colmean + grandmean.
Mat centered_gram(const Mat& raw_gram);

/**
 * @brief Top-d feature-space directions from a Gram matrix.
 *
 * Eigenpairs (sigma_q^2, a_q) of K give directions w_q = sum_j alpha_j(q)
 * phi(y_j) with alpha(q) = a_q / sigma_q, normalized so alpha(q)^T K
 * alpha(q) = 1 (unit feature-space norm). Columns of alphas hold the scaled
 * coefficients, sorted by non-increasing sigma; eigenvector signs are fixed
 * before scaling. Eigenvalues in (-1e-10 * trace, 0) are clamped to zero;
 * anything more negative raises an error (kernel not PSD). Directions whose
 * sigma falls at or below 1e-10 * trace are dropped and rank_deficient is
 * set when fewer than d survive.
 */
struct KernelPcaResult {
  /// Kept singular values sigma_q, non-increasing, all positive.
  Vec sigmas;
  /// One column of coefficients per kept direction.
  Mat alphas;
  bool rank_deficient = false;
};

KernelPcaResult kernel_pca(const Mat& K, Index d);

/// Projection of a query point onto the direction sum_j alpha_j phi(s_j):
/// sum_j alpha_j kernel(s_j, query).
double kernel_project(const Vec& alpha, const ObservationSet& support,
                      const KernelFn& kernel, const Vec& query);

/**
 * @brief Champion model of the kernelized removal loop: directions expressed
 *        as kernel expansions over the support points that remained when the
 *        champion was crowned.
 *
 * kernel is the effective kernel (centered when the run centered), so
 * project() reproduces in-loop projection values on any query.
 */
struct KernelModel {
  Mat coefficients;  ///< support_points.size() x kept-directions.
  ObservationSet support_points;
  KernelFn kernel;

  Index direction_count() const { return coefficients.cols(); }
  double project(const Vec& query, Index q) const;
};

struct KernelRunResult {
  KernelModel model;
  double opt = 0.0;
  RunTrace trace;
  /// Set when any iteration had to drop feature-space directions.
  bool rank_deficient = false;
};

/**
 * @brief Kernelized removal loop.
 *
 * Identical control flow to run(): per iteration, eigendecompose the Gram
 * matrix of the remaining points, score the candidate directions by summed
 * robust variance of the *original* points' projections, update the champion
 * on strict improvement, and remove one remaining point with probability
 * proportional to its summed squared projection. Consumes exactly one
 * uniform variate per iteration, so with the linear kernel and equal seeds
 * it removes the same points in the same order as run(). cfg.center centers
 * the Gram matrix (equivalently, the feature map) with respect to the full
 * original set. cfg.d counts requested feature-space directions; cfg.t_bar
 * may not exceed n - d - 1 for the same reason as in run().
 */
KernelRunResult run_kernel(const ObservationSet& data, const KernelFn& kernel,
                           const HrPcaConfig& cfg);

}  // namespace hrpca
