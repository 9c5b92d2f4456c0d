/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/linalg.cpp
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

#include "hrpca/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace hrpca {

Mat second_moment(const ObservationSet& points, Index divisor) {
  if (points.empty())
    throw std::invalid_argument("second_moment: empty observation set");
  if (divisor <= 0)
    throw std::invalid_argument("second_moment: divisor must be positive");
  const Mat& y = points.points();
  return (y * y.transpose()) / static_cast<double>(divisor);
}

void fix_column_signs(Eigen::Ref<Mat> vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index argmax = 0;
    double best = -1.0;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {  // strict: first index wins ties
        best = mag;
        argmax = r;
      }
    }
    if (vectors(argmax, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

EigPairs top_eigs(const Mat& M, Index d) {
  const Index dim = M.rows();
  if (dim == 0 || M.cols() != dim)
    throw std::invalid_argument("top_eigs: matrix must be square and non-empty");
  if (d < 1 || d > dim)
    throw std::invalid_argument("top_eigs: d must lie in [1, dim]");
  if (!M.allFinite())
    throw std::invalid_argument("top_eigs: matrix contains non-finite entries");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("top_eigs: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("top_eigs: eigendecomposition failed to converge");

  // Eigen sorts ascending; flip the top d into non-increasing order.
  EigPairs out;
  out.values = Vec(d);
  out.vectors = Mat(dim, d);
  for (Index q = 0; q < d; ++q) {
    out.values[q] = solver.eigenvalues()[dim - 1 - q];
    out.vectors.col(q) = solver.eigenvectors().col(dim - 1 - q);
  }
  fix_column_signs(out.vectors);
  return out;
}

Mat gram(const ObservationSet& points, const KernelFn& kernel) {
  const Index n = points.size();
  Mat K(n, n);
  for (Index i = 0; i < n; ++i) {
    const Vec yi = points.point(i);
    for (Index j = i; j < n; ++j) {
      const double v = kernel(yi, points.point(j));
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

Mat orthonormalize(const Mat& vectors) {
  if (vectors.cols() < 1 || vectors.rows() < vectors.cols())
    throw std::invalid_argument("orthonormalize: need 1..m columns in R^m");
  Eigen::HouseholderQR<Mat> qr(vectors);
  Mat q = qr.householderQ() * Mat::Identity(vectors.rows(), vectors.cols());
  // Guard against rank deficiency: R's diagonal must be bounded away from 0.
  const Mat r = qr.matrixQR().topLeftCorner(vectors.cols(), vectors.cols());
  const double scale = std::max(1.0, vectors.cwiseAbs().maxCoeff());
  for (Index j = 0; j < vectors.cols(); ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * scale)
      throw std::invalid_argument("orthonormalize: columns are rank deficient");
  }
  fix_column_signs(q);
  return q;
}

}  // namespace hrpca
