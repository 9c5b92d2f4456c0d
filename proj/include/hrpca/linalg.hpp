/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/linalg.hpp
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

#include "hrpca/kernel_fn.hpp"
#include "hrpca/types.hpp"

namespace hrpca {

/**
 * @brief Empirical second-moment matrix (1/divisor) * sum_i y_i y_i^T.
 *
 * The divisor is a caller decision (the removal loop divides by the original
 * count minus the iteration number, not by the current point count).
 * Throws if the set is empty or the divisor is not positive.
 */
Mat second_moment(const ObservationSet& points, Index divisor);

/**
 * @brief Top-d eigenpairs of a symmetric matrix.
 *
 * Eigenvalues come back non-increasing; eigenvectors are unit-norm, pairwise
 * orthogonal, and sign-fixed so each vector's largest-magnitude entry (first
 * such index on ties) is non-negative, which makes results reproducible
 * across runs. Throws if M is not square, not symmetric within a 1e-9
 * relative tolerance, or d is outside [1, dim].
 */
EigPairs top_eigs(const Mat& M, Index d);

/// Gram matrix K with K(i, j) = kernel(y_i, y_j).
Mat gram(const ObservationSet& points, const KernelFn& kernel);

/**
 * @brief Orthonormal frame spanning the columns of @p vectors.
 *
 * Householder QR; the result has the same number of columns (the input must
 * have full column rank) and is sign-fixed like top_eigs output.
 */
Mat orthonormalize(const Mat& vectors);

/// In place: flip each column's sign so that its largest-magnitude entry
/// (first such index on ties) is non-negative.
void fix_column_signs(Eigen::Ref<Mat> vectors);

}  // namespace hrpca
