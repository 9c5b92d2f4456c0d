/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/types.hpp
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

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <utility>

namespace hrpca {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

/**
 * @brief Immutable collection of n observation vectors in R^m, one per column.
 *
 * Construction validates that every entry is finite; downstream numeric code
 * relies on that and never re-checks.
 */
class ObservationSet {
public:
  ObservationSet() = default;

  explicit ObservationSet(Mat points) : points_(std::move(points)) {
    if (!points_.allFinite())
      throw std::invalid_argument("observation set contains non-finite entries");
  }

  /// Ambient dimension m.
  Index dim() const { return points_.rows(); }
  /// Number of points n.
  Index size() const { return points_.cols(); }
  bool empty() const { return points_.cols() == 0; }

  const Mat& points() const { return points_; }
  Vec point(Index i) const {
    if (i < 0 || i >= points_.cols())
      throw std::invalid_argument("observation index out of range");
    return points_.col(i);
  }

  /// New set holding the selected columns, in the given order.
  ObservationSet subset(std::span<const Index> indices) const {
    Mat sel(points_.rows(), static_cast<Index>(indices.size()));
    Index k = 0;
    for (Index i : indices) {
      if (i < 0 || i >= points_.cols())
        throw std::invalid_argument("subset index out of range");
      sel.col(k++) = points_.col(i);
    }
    return ObservationSet(std::move(sel));
  }

  /// New set with the sample mean subtracted from every point.
  ObservationSet centered() const {
    if (empty()) return *this;
    Vec mean = points_.rowwise().mean();
    return ObservationSet(points_.colwise() - mean);
  }

private:
  Mat points_;
};

/**
 * @brief Ordered orthonormal frame in R^m, one unit vector per column.
 *
 * The constructor rejects frames whose Gram matrix deviates from the identity
 * by more than @p tol in any entry. A default-constructed Basis is the empty
 * frame (count() == 0) and is only meant as a placeholder.
 */
class Basis {
public:
  Basis() = default;

  explicit Basis(Mat vectors, double tol = 1e-8) : vectors_(std::move(vectors)) {
    const Index m = vectors_.rows();
    const Index d = vectors_.cols();
    if (d < 1 || m < d)
      throw std::invalid_argument("basis must hold between 1 and m vectors in R^m");
    if (!vectors_.allFinite())
      throw std::invalid_argument("basis contains non-finite entries");
    Mat g = vectors_.transpose() * vectors_;
    g -= Mat::Identity(d, d);
    if (g.cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("basis is not orthonormal");
  }

  /// Ambient dimension m (0 for the empty frame).
  Index dim() const { return vectors_.rows(); }
  /// Number of vectors d.
  Index count() const { return vectors_.cols(); }
  const Mat& vectors() const { return vectors_; }
  Vec vector(Index j) const {
    if (j < 0 || j >= vectors_.cols())
      throw std::invalid_argument("basis index out of range");
    return vectors_.col(j);
  }

private:
  Mat vectors_;
};

/// Eigenvalue/eigenvector pairs of a symmetric matrix, eigenvalues sorted
/// non-increasing; vectors_.col(q) pairs with values[q].
struct EigPairs {
  Vec values;
  Mat vectors;
  Index count() const { return values.size(); }
};

}  // namespace hrpca
