/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/hrpca.cpp
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

#include "hrpca/hrpca.hpp"

#include "hrpca/linalg.hpp"
#include "hrpca/metrics.hpp"
#include "hrpca/rng.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace hrpca {

Index default_t_hat(Index n) { return (n + 1) / 2; }

Index default_t_bar(Index n, Index d) { return n - d - 1; }

Vec removal_weights(const Basis& basis, const ObservationSet& remaining) {
  if (remaining.empty())
    throw std::invalid_argument("removal_weights: empty observation set");
  if (basis.count() < 1 || basis.dim() != remaining.dim())
    throw std::invalid_argument("removal_weights: basis/observation dimension mismatch");
  const Mat proj = basis.vectors().transpose() * remaining.points();
  return proj.colwise().squaredNorm().transpose();
}

namespace {

struct ResolvedConfig {
  Index d;
  Index t_bar;
  Index t_hat;
};

ResolvedConfig resolve(const HrPcaConfig& cfg, Index n, Index m) {
  if (cfg.d < 1 || cfg.d > m)
    throw std::invalid_argument("run: d must lie in [1, m]");
  if (n < cfg.d + 1)
    throw std::invalid_argument("run: need at least d + 1 observations");
  const Index t_bar = cfg.t_bar.value_or(default_t_bar(n, cfg.d));
  if (t_bar < 0 || t_bar > n - 1)
    throw std::invalid_argument("run: t_bar must lie in [0, n - 1]");
  const Index t_hat = cfg.t_hat.value_or(default_t_hat(n));
  if (t_hat < 1 || t_hat > n)
    throw std::invalid_argument("run: t_hat must lie in [1, n]");
  return ResolvedConfig{cfg.d, t_bar, t_hat};
}

/// One uniform draw -> index of the point to remove. Zero total weight falls
/// back to a uniform pick with the same single draw.
std::size_t pick_removal(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total > 0.0) return weighted_pick(weights, u);
  const auto count = weights.size();
  auto idx = static_cast<std::size_t>(u * static_cast<double>(count));
  return idx < count ? idx : count - 1;
}

}  // namespace

HrPcaResult run(const ObservationSet& data, const HrPcaConfig& cfg) {
  const Index n = data.size();
  const Index m = data.dim();
  if (n < 1) throw std::invalid_argument("run: empty observation set");
  const ResolvedConfig rc = resolve(cfg, n, m);

  // The working set is fixed for the whole run; candidate scoring always
  // sees all n of its points, no matter how many the loop has removed.
  const ObservationSet work = cfg.center ? data.centered() : data;

  RandomEngine engine(cfg.seed);
  std::vector<Index> remaining(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i;

  Basis champion;
  double opt = 0.0;
  RunTrace trace;
  trace.iterations.reserve(static_cast<std::size_t>(rc.t_bar) + 1);

  for (Index s = 0; s <= rc.t_bar; ++s) {
    const ObservationSet current = work.subset(remaining);
    const Mat sigma_hat = second_moment(current, n - s);
    const EigPairs eigs = top_eigs(sigma_hat, rc.d);
    Basis candidate(eigs.vectors);

    double cand_score = 0.0;
    for (Index q = 0; q < rc.d; ++q)
      cand_score += rve_direction(candidate.vector(q), work, rc.t_hat);

    IterationRecord rec;
    rec.s = s;
    rec.candidate_rve = cand_score;
    rec.opt_before = opt;
    rec.champion_updated = cand_score > opt;
    if (cfg.record_bases) rec.basis = candidate;

    if (s == 0) champion = candidate;  // total result even if no score beats 0
    if (rec.champion_updated) {
      opt = cand_score;
      champion = candidate;
    }

    const Vec weights = removal_weights(candidate, current);
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
  return HrPcaResult{std::move(champion), opt, std::move(trace)};
}

}  // namespace hrpca
