/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/hrpca.hpp
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

#include <cstdint>
#include <optional>
#include <vector>

namespace hrpca {

/**
 * @brief Configuration for the robust removal loop.
 *
 * t_bar is the number of removal iterations beyond the first (the loop body
 * runs t_bar + 1 times and removes one point each time); t_hat is the trim
 * level of the robust variance estimate. Leaving either unset picks the
 * safe defaults: t_hat = ceil(n / 2) (valid whenever contamination is below
 * one half) and t_bar = n - d - 1 (enough iterations for any contamination
 * level; the champion mechanism makes extra iterations harmless).
 */
struct HrPcaConfig {
  Index d = 1;
  std::optional<Index> t_bar;
  std::optional<Index> t_hat;
  std::uint64_t seed = 0;
  /// Subtract the sample mean of the full set once, before the loop.
  bool center = false;
  /// Record each iteration's candidate frame in the trace (memory-heavy;
  /// meant for tests and diagnostics).
  bool record_bases = false;
};

/// One removal-loop iteration: which point left, what the candidate scored,
/// and whether it dethroned the champion.
struct IterationRecord {
  Index s = 0;
  /// Index into the *original* observation set of the removed point.
  Index removed_point = -1;
  /// Summed robust variance of this iteration's candidate frame, evaluated
  /// on the original set.
  double candidate_rve = 0.0;
  /// Champion score before this iteration's comparison.
  double opt_before = 0.0;
  bool champion_updated = false;
  /// Present only when HrPcaConfig::record_bases is set.
  std::optional<Basis> basis;
};

/// Complete removal history of one run.
struct RunTrace {
  std::vector<IterationRecord> iterations;
  double final_opt = 0.0;
};

/**
 * @brief Result of the robust removal loop.
 *
 * basis is the champion frame; opt equals the summed robust variance of that
 * frame on the original (centered, if centering was requested) set at the
 * configured trim level. If no candidate ever scored above zero (all-zero
 * data), the first candidate frame is returned with opt = 0.
 */
struct HrPcaResult {
  Basis basis;
  double opt = 0.0;
  RunTrace trace;
};

/// Removal weight of each remaining point: sum over frame vectors of the
/// squared projection. Throws on dimension mismatch or empty set.
Vec removal_weights(const Basis& basis, const ObservationSet& remaining);

/**
 * @brief Robust PCA by iterated eigendecomposition and probabilistic removal.
 *
 * Each iteration s = 0..t_bar: form the second moment of the remaining
 * points divided by (n - s), take its top-d eigenvectors as the candidate
 * frame, score the candidate by summed robust variance on the original set,
 * keep it if it strictly beats the champion, then remove one remaining point
 * with probability proportional to its squared projection onto the candidate
 * frame. Exactly one uniform variate is consumed per iteration (also when
 * all weights vanish and the removal falls back to a uniform pick), so runs
 * with equal seeds are trace-for-trace reproducible.
 *
 * Requires n >= d + 1 so at least one authentic-sized subset survives the
 * longest default loop. Throws on invalid configuration.
 */
HrPcaResult run(const ObservationSet& data, const HrPcaConfig& cfg);

/// The t_hat default used when the configuration leaves it unset.
Index default_t_hat(Index n);
/// The t_bar default used when the configuration leaves it unset.
Index default_t_bar(Index n, Index d);

}  // namespace hrpca
