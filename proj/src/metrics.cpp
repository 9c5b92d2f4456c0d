/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/metrics.cpp
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

#include "hrpca/metrics.hpp"

#include "hrpca/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hrpca {

Score expressed_variance(const Basis& basis, const Mat& signal_matrix) {
  if (basis.count() < 1)
    throw std::invalid_argument("expressed_variance: empty basis");
  if (basis.dim() != signal_matrix.rows())
    throw std::invalid_argument("expressed_variance: basis/signal dimension mismatch");
  if (basis.count() > signal_matrix.cols())
    throw std::invalid_argument(
        "expressed_variance: basis has more vectors than the signal has directions");

  // h = sum_j |A^T w_j|^2; h_bar = the best any frame of this size achieves,
  // i.e. the top-count eigenvalue sum of A^T A (a small d-by-d problem).
  const double h = (signal_matrix.transpose() * basis.vectors()).squaredNorm();
  const Mat small = signal_matrix.transpose() * signal_matrix;
  const EigPairs eigs = top_eigs(small, basis.count());
  const double h_bar = eigs.values.sum();
  if (!(h_bar > 0.0))
    throw std::invalid_argument("expressed_variance: signal matrix has no variance");
  return Score{h / h_bar, h, h_bar};
}

double rve_direction(const Vec& direction, const ObservationSet& full_set, Index t_hat) {
  const Index n = full_set.size();
  if (n < 1) throw std::invalid_argument("rve: empty observation set");
  if (direction.size() != full_set.dim())
    throw std::invalid_argument("rve: direction/observation dimension mismatch");
  if (t_hat < 1 || t_hat > n)
    throw std::invalid_argument("rve: t_hat must lie in [1, n]");

  std::vector<double> sq(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double p = direction.dot(full_set.points().col(i));
    sq[static_cast<std::size_t>(i)] = p * p;
  }
  std::sort(sq.begin(), sq.end());
  double sum = 0.0;
  for (Index i = 0; i < t_hat; ++i) sum += sq[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(n);
}

double rve(const Basis& basis, const ObservationSet& full_set, Index t_hat) {
  if (basis.count() < 1) throw std::invalid_argument("rve: empty basis");
  double total = 0.0;
  for (Index j = 0; j < basis.count(); ++j)
    total += rve_direction(basis.vector(j), full_set, t_hat);
  return total;
}

}  // namespace hrpca
