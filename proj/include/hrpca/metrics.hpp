/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/metrics.hpp
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

namespace hrpca {

/// Expressed-variance score of a recovered frame against the true signal
/// matrix: ev = h / h_bar, with h the variance the frame captures and h_bar
/// the best achievable by any frame of the same size.
struct Score {
  double ev;
  double h;
  double h_bar;
};

/**
 * @brief How much of the signal's variance the frame captures, relative to
 *        the optimum.
 *
 * h = sum_j |A^T w_j|^2 and h_bar = sum of the top-count(basis) eigenvalues
 * of A^T A (equivalently of A A^T), so ev is in [0, 1] up to rounding and
 * equals the squared cosine of the principal angle when both are
 * one-dimensional. The frame may have fewer vectors than A has columns (the
 * score then measures recovery of the best subspace of that smaller size);
 * it may not have more. Throws on dimension mismatch or when A is zero.
 */
Score expressed_variance(const Basis& basis, const Mat& signal_matrix);

/**
 * @brief Robust variance estimate of a single direction: mean of the t_hat
 *        smallest squared projections over the full set.
 *
 * Sorts |w^T y_i|^2 over all n points ascending, sums the first t_hat, and
 * divides by n. Always evaluated on the full original set; removal loops
 * never shrink the set this sees. Ties in the sorted order are value-equal,
 * so the sum does not depend on how they are broken. Throws unless
 * 1 <= t_hat <= n.
 */
double rve_direction(const Vec& direction, const ObservationSet& full_set, Index t_hat);

/// Sum of rve_direction over the frame's vectors (the quantity the removal
/// loop's champion maximizes).
double rve(const Basis& basis, const ObservationSet& full_set, Index t_hat);

}  // namespace hrpca
