/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/kernel.cpp
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

#include "hrpca/kernel.hpp"

#include "hrpca/linalg.hpp"
#include "hrpca/rng.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hrpca {

KernelFn center_kernel(const KernelFn& kernel, const ObservationSet& anchors) {
  if (anchors.empty())
    throw std::invalid_argument("center_kernel: empty anchor set");
  const auto pts = std::make_shared<const Mat>(anchors.points());
  const Index n = pts->cols();

  double grand = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) grand += kernel(pts->col(i), pts->col(j));
  grand /= static_cast<double>(n) * static_cast<double>(n);

  KernelFn base = kernel;
  auto mean_to = [pts, base, n](const Vec& v) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) s += base(pts->col(j), v);
    return s / static_cast<double>(n);
  };
  return KernelFn::custom(
      "centered(" + kernel.name() + ")",
      [base, mean_to, grand](const Vec& a, const Vec& b) {
        return base(a, b) - mean_to(a) - mean_to(b) + grand;
      });
}

Mat centered_gram(const Mat& raw_gram) {
  const Index n = raw_gram.rows();
  if (n == 0 || raw_gram.cols() != n)
    throw std::invalid_argument("centered_gram: matrix must be square and non-empty");
  const Vec row_mean = raw_gram.rowwise().mean();
  const double grand = row_mean.mean();
  Mat out = raw_gram;
  out.colwise() -= row_mean;
  out.rowwise() -= row_mean.transpose();
  out.array() += grand;
  return out;
}

KernelPcaResult kernel_pca(const Mat& K, Index d) {
  const Index dim = K.rows();
  if (dim == 0 || K.cols() != dim)
    throw std::invalid_argument("kernel_pca: matrix must be square and non-empty");
  if (d < 1 || d > dim)
    throw std::invalid_argument("kernel_pca: d must lie in [1, dim]");
  if (!K.allFinite())
    throw std::invalid_argument("kernel_pca: matrix contains non-finite entries");
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("kernel_pca: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> solver(K);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("kernel_pca: eigendecomposition failed to converge");

  const double trace = K.trace();
  const double clamp_band = 1e-10 * std::max(trace, 1.0);
  if (solver.eigenvalues()[0] < -clamp_band)
    throw std::runtime_error("kernel_pca: gram matrix is not positive semidefinite");

  // Walk the top d eigenpairs (Eigen sorts ascending), clamping roundoff
  // negatives to zero and dropping directions too weak to normalize.
  const double sigma_tol = 1e-10 * std::max(trace, 0.0);
  std::vector<Index> kept;
  for (Index q = 0; q < d; ++q) {
    const double lambda = std::max(solver.eigenvalues()[dim - 1 - q], 0.0);
    if (std::sqrt(lambda) > sigma_tol) kept.push_back(dim - 1 - q);
  }

  KernelPcaResult out;
  out.rank_deficient = static_cast<Index>(kept.size()) < d;
  out.sigmas = Vec(static_cast<Index>(kept.size()));
  out.alphas = Mat(dim, static_cast<Index>(kept.size()));
  Mat raw(dim, static_cast<Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    raw.col(static_cast<Index>(k)) = solver.eigenvectors().col(kept[k]);
  fix_column_signs(raw);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto q = static_cast<Index>(k);
    const double sigma = std::sqrt(std::max(solver.eigenvalues()[kept[k]], 0.0));
    out.sigmas[q] = sigma;
    out.alphas.col(q) = raw.col(q) / sigma;  // makes alpha^T K alpha = 1
  }
  return out;
}

double kernel_project(const Vec& alpha, const ObservationSet& support,
                      const KernelFn& kernel, const Vec& query) {
  if (alpha.size() != support.size())
    throw std::invalid_argument("kernel_project: coefficient/support size mismatch");
  if (!support.empty() && query.size() != support.dim())
    throw std::invalid_argument("kernel_project: query dimension mismatch");
  double s = 0.0;
  for (Index j = 0; j < support.size(); ++j)
    s += alpha[j] * kernel(support.points().col(j), query);
  return s;
}

double KernelModel::project(const Vec& query, Index q) const {
  if (q < 0 || q >= coefficients.cols())
    throw std::invalid_argument("KernelModel::project: direction index out of range");
  return kernel_project(coefficients.col(q), support_points, kernel, query);
}

namespace {

/// Same sort-sum-divide arithmetic as the direction-wise robust variance in
/// metrics: ascending sort, left-to-right accumulation, one final division.
double trimmed_mean_of_squares(std::vector<double>& sq, Index t_hat, Index n) {
  std::sort(sq.begin(), sq.end());
  double sum = 0.0;
  for (Index i = 0; i < t_hat; ++i) sum += sq[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(n);
}

std::size_t pick_removal(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total > 0.0) return weighted_pick(weights, u);
  const auto count = weights.size();
  auto idx = static_cast<std::size_t>(u * static_cast<double>(count));
  return idx < count ? idx : count - 1;
}

}  // namespace

KernelRunResult run_kernel(const ObservationSet& data, const KernelFn& kernel,
                           const HrPcaConfig& cfg) {
  const Index n = data.size();
  if (n < 1) throw std::invalid_argument("run_kernel: empty observation set");
  if (cfg.d < 1) throw std::invalid_argument("run_kernel: d must be >= 1");
  if (n < cfg.d + 1)
    throw std::invalid_argument("run_kernel: need at least d + 1 observations");
  const Index t_bar = cfg.t_bar.value_or(default_t_bar(n, cfg.d));
  if (t_bar < 0 || t_bar > n - cfg.d)
    throw std::invalid_argument("run_kernel: t_bar must lie in [0, n - d]");
  const Index t_hat = cfg.t_hat.value_or(default_t_hat(n));
  if (t_hat < 1 || t_hat > n)
    throw std::invalid_argument("run_kernel: t_hat must lie in [1, n]");

  // Full-set Gram once; iterations slice it. Centering the Gram equals
  // centering the feature map with the full original set as anchors.
  Mat G = gram(data, kernel);
  if (cfg.center) G = centered_gram(G);
  const KernelFn effective = cfg.center ? center_kernel(kernel, data) : kernel;

  RandomEngine engine(cfg.seed);
  std::vector<Index> remaining(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i;

  KernelRunResult result;
  result.model.kernel = effective;
  double opt = 0.0;
  bool have_model = false;
  RunTrace trace;
  trace.iterations.reserve(static_cast<std::size_t>(t_bar) + 1);

  for (Index s = 0; s <= t_bar; ++s) {
    const auto n_rem = static_cast<Index>(remaining.size());
    Mat K(n_rem, n_rem);
    for (Index i = 0; i < n_rem; ++i)
      for (Index j = 0; j < n_rem; ++j)
        K(i, j) = G(remaining[static_cast<std::size_t>(i)],
                    remaining[static_cast<std::size_t>(j)]);

    const KernelPcaResult kp = kernel_pca(K, std::min(cfg.d, n_rem));
    if (kp.rank_deficient || n_rem < cfg.d) result.rank_deficient = true;
    const Index kept = kp.alphas.cols();

    // Projections of every *original* point onto each kept direction.
    Mat P(kept, n);
    for (Index q = 0; q < kept; ++q)
      for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Index j = 0; j < n_rem; ++j)
          acc += kp.alphas(j, q) * G(remaining[static_cast<std::size_t>(j)], i);
        P(q, i) = acc;
      }

    double cand_score = 0.0;
    std::vector<double> sq(static_cast<std::size_t>(n));
    for (Index q = 0; q < kept; ++q) {
      for (Index i = 0; i < n; ++i)
        sq[static_cast<std::size_t>(i)] = P(q, i) * P(q, i);
      cand_score += trimmed_mean_of_squares(sq, t_hat, n);
    }

    IterationRecord rec;
    rec.s = s;
    rec.candidate_rve = cand_score;
    rec.opt_before = opt;
    rec.champion_updated = cand_score > opt;

    const bool adopt = rec.champion_updated || (s == 0 && !have_model);
    if (adopt) {
      result.model.coefficients = kp.alphas;
      result.model.support_points = data.subset(remaining);
      have_model = true;
    }
    if (rec.champion_updated) opt = cand_score;

    Vec weights = Vec::Zero(n_rem);
    for (Index i = 0; i < n_rem; ++i)
      for (Index q = 0; q < kept; ++q) {
        const double p = P(q, remaining[static_cast<std::size_t>(i)]);
        weights[i] += p * p;
      }

    const double u = engine.uniform01();
    const std::size_t pick =
        pick_removal(std::span<const double>(weights.data(),
                                             static_cast<std::size_t>(weights.size())),
                     u);
    rec.removed_point = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    trace.iterations.push_back(std::move(rec));
  }

  trace.final_opt = opt;
  result.opt = opt;
  result.trace = std::move(trace);
  return result;
}

}  // namespace hrpca
