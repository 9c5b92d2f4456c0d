/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/baselines.cpp
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

#include "hrpca/baselines.hpp"

#include "hrpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hrpca {

Basis pca_baseline(const ObservationSet& data, Index d) {
  if (data.empty()) throw std::invalid_argument("pca_baseline: empty observation set");
  if (d < 1 || d > data.dim())
    throw std::invalid_argument("pca_baseline: d must lie in [1, m]");
  const Mat sigma = second_moment(data, data.size());
  return Basis(top_eigs(sigma, d).vectors);
}

MvtResult mvt(const ObservationSet& data, Index d, const MvtConfig& cfg) {
  const Index n = data.size();
  const Index m = data.dim();
  if (n < 1) throw std::invalid_argument("mvt: empty observation set");
  if (d < 1 || d > m) throw std::invalid_argument("mvt: d must lie in [1, m]");
  if (!(cfg.trim_fraction > 0.0 && cfg.trim_fraction < 0.5))
    throw std::invalid_argument("mvt: trim_fraction must lie in (0, 0.5)");
  if (cfg.iterations < 1)
    throw std::invalid_argument("mvt: iterations must be >= 1");

  std::vector<Index> kept(static_cast<std::size_t>(n));
  std::iota(kept.begin(), kept.end(), Index{0});
  MvtResult result;
  result.kept_sizes.push_back(n);

  for (int round = 0; round < cfg.iterations; ++round) {
    const auto count = static_cast<Index>(kept.size());
    // With count <= m the centered covariance is singular by construction,
    // so the precondition failure and a degenerate fit raise the same error.
    if (count <= m)
      throw std::runtime_error(
          "mvt: covariance ill-conditioned (kept-set size does not exceed the dimension)");

    const ObservationSet current = data.subset(kept);
    const Vec mean = current.points().rowwise().mean();
    const Mat centered = current.points().colwise() - mean;
    const Mat cov = (centered * centered.transpose()) / static_cast<double>(count);

    Eigen::SelfAdjointEigenSolver<Mat> solver(cov);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("mvt: covariance eigendecomposition failed");
    const double lo = solver.eigenvalues()[0];
    const double hi = solver.eigenvalues()[m - 1];
    if (!(lo > 0.0) || hi / lo > 1e12)
      throw std::runtime_error("mvt: covariance ill-conditioned");

    // Mahalanobis distances via the spectral inverse.
    const Mat evecs = solver.eigenvectors();
    const Vec inv_evals = solver.eigenvalues().cwiseInverse();
    std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
      const Vec z = evecs.transpose() * centered.col(i);
      dist[static_cast<std::size_t>(i)] = {z.cwiseAbs2().dot(inv_evals), i};
    }
    // Drop the ceil(trim_fraction * count) farthest; on ties keep the
    // earlier index.
    const auto drop = static_cast<Index>(std::ceil(
        cfg.trim_fraction * static_cast<double>(count)));
    std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second > b.second;
    });
    std::vector<bool> dropped(static_cast<std::size_t>(count), false);
    for (Index k = 0; k < drop; ++k)
      dropped[static_cast<std::size_t>(dist[static_cast<std::size_t>(k)].second)] = true;
    std::vector<Index> next;
    next.reserve(static_cast<std::size_t>(count - drop));
    for (Index i = 0; i < count; ++i)
      if (!dropped[static_cast<std::size_t>(i)])
        next.push_back(kept[static_cast<std::size_t>(i)]);
    kept = std::move(next);
    result.kept_sizes.push_back(static_cast<Index>(kept.size()));
  }

  const ObservationSet final_set = data.subset(kept);
  const Mat sigma = second_moment(final_set, final_set.size());
  result.basis = Basis(top_eigs(sigma, d).vectors);
  return result;
}

Basis pp_approx(const ObservationSet& data, Index d, const PpConfig& cfg) {
  const Index n = data.size();
  const Index m = data.dim();
  if (n < 1) throw std::invalid_argument("pp_approx: empty observation set");
  if (d < 1 || d > m) throw std::invalid_argument("pp_approx: d must lie in [1, m]");
  if (n < d) throw std::invalid_argument("pp_approx: need at least d points");
  const Index trim = cfg.trim_level.value_or((n + 1) / 2);
  if (trim < 1 || trim > n)
    throw std::invalid_argument("pp_approx: trim_level must lie in [1, n]");

  Mat deflated = data.points();
  const double scale = std::max(1.0, deflated.cwiseAbs().maxCoeff());
  Mat winners(m, d);

  for (Index round = 0; round < d; ++round) {
    Index best_idx = -1;
    double best_score = -1.0;
    Vec best_dir;
    std::vector<double> sq(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      const double norm = deflated.col(i).norm();
      if (norm <= 1e-12 * scale) continue;  // zero-norm points are skipped
      const Vec w = deflated.col(i) / norm;
      for (Index k = 0; k < n; ++k) {
        const double p = w.dot(deflated.col(k));
        sq[static_cast<std::size_t>(k)] = p * p;
      }
      std::sort(sq.begin(), sq.end());
      double score = 0.0;
      for (Index k = 0; k < trim; ++k) score += sq[static_cast<std::size_t>(k)];
      score /= static_cast<double>(n);
      if (score > best_score) {  // strict: ties keep the lowest index
        best_score = score;
        best_idx = i;
        best_dir = w;
      }
    }
    if (best_idx < 0)
      throw std::runtime_error(
          "pp_approx: fewer than d nonzero candidate directions");
    winners.col(round) = best_dir;
    deflated -= best_dir * (best_dir.transpose() * deflated);
  }

  return Basis(orthonormalize(winners));
}

}  // namespace hrpca
