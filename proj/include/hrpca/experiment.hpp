/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/experiment.hpp
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

#include "hrpca/baselines.hpp"
#include "hrpca/datagen.hpp"
#include "hrpca/format.hpp"
#include "hrpca/hrpca.hpp"
#include "hrpca/tailbound.hpp"
#include "hrpca/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hrpca {

/// Estimators the harness can dispatch to.
enum class Method { pca, hrpca, kpca_linear, kpca_rbf, kpca_poly, mvt, pp };

std::string method_name(Method method);
/// Inverse of method_name; throws on unknown names.
Method parse_method(const std::string& name);
/// All methods, in the order they sort in output files (alphabetical name).
std::vector<Method> all_methods();

/// Per-method knobs shared by cmd_run and sweeps.
struct MethodParams {
  std::optional<Index> t_hat;
  std::optional<Index> t_bar;
  bool center = false;
  double rbf_gamma = 1.0;
  int poly_degree = 2;
  double poly_offset = 1.0;
  MvtConfig mvt;
  std::optional<Index> pp_trim;
};

/**
 * @brief Outcome of one estimator on one dataset.
 *
 * ev is absent when there is no ground truth to score against or the method
 * yields no input-space frame (non-linear kernels); opt is the summed robust
 * variance of the result (the kernel runs' champion score; for frame-valued
 * methods, their frame's score at the resolved trim level). status is "ok"
 * on success — possibly suffixed with a rank-deficiency note — or the error
 * text when the method failed, in which case ev and opt are absent.
 */
struct RunRecord {
  std::optional<double> ev;
  std::optional<double> opt;
  std::string status = "ok";
  double runtime_ms = 0.0;
};

RunRecord run_method(Method method, const ObservationSet& data,
                     const GroundTruth* truth, Index d, std::uint64_t seed,
                     const MethodParams& params);

/// One line of the per-trial results table.
struct ResultRow {
  std::int64_t cell_id = 0;
  std::string method;
  double lambda = 0.0;
  double sigma = 0.0;
  double mag = 0.0;
  Index n = 0;
  Index m = 0;
  Index d = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> ev;
  std::optional<double> opt;
  std::string status = "ok";
  double runtime_ms = 0.0;
};

/// Fixed column list of the per-trial table.
std::string csv_header();
/// Serializes one row. Doubles print shortest-round-trip; absent ev/opt
/// print as NA; commas inside status are replaced by semicolons.
std::string to_csv(const ResultRow& row);
/// Parses a line written by to_csv (lossless for every field).
ResultRow parse_csv_row(const std::string& line);

/**
 * @brief Full factorial sweep specification.
 *
 * Cells are the cross product of the axis vectors, enumerated lambda-major
 * (then sigma, mag, n, m, d) with sequential cell_id. Every method sees the
 * identical dataset in a given (cell, trial): the dataset seed is
 * mix_seed(base_seed, cell_id, trial) and method-internal randomness is
 * derived from it per method name, so adding a method to the list perturbs
 * nothing else. trials defaults to 20, the standard protocol. threads > 1
 * runs trials concurrently; output is independent of the thread count.
 */
struct ExperimentSpec {
  std::vector<double> lambdas{0.2};
  std::vector<double> sigmas{5.0};
  std::vector<double> mags{10.0};
  std::vector<Index> ns{100};
  std::vector<Index> ms{100};
  std::vector<Index> ds{1};
  /// Outlier directions per cell; defaults to the cell's d.
  std::optional<Index> outlier_lines;
  TailModel::Kind signal_marginal = TailModel::Kind::gaussian;
  std::vector<Method> methods{Method::pca, Method::hrpca};
  int trials = 20;
  std::uint64_t base_seed = 0;
  MethodParams params;
  int threads = 1;

  Index cell_count() const;
  /// The GenSpec of one cell (validated lazily by run_sweep's pre-flight).
  GenSpec cell_spec(Index cell_id) const;
  /// Throws if any axis is empty, trials < 1, or any cell violates the
  /// generator's contract.
  void validate() const;
};

/// Parses an ExperimentSpec from its JSON form (see README for the schema).
ExperimentSpec parse_experiment_spec(const std::string& json_text);
/// Parses a GenSpec from its JSON form.
GenSpec parse_gen_spec(const std::string& json_text);

/// Rows sorted by (cell_id, method, trial).
struct SweepResult {
  std::vector<ResultRow> rows;
};

SweepResult run_sweep(const ExperimentSpec& spec);

/// Writes the per-trial table (header + rows).
void write_rows_csv(const std::filesystem::path& path,
                    const std::vector<ResultRow>& rows);
/// Appends one row, writing the header first when the file is new or empty.
void append_row_csv(const std::filesystem::path& path, const ResultRow& row);
/// Writes the one-row-per-(cell, method) aggregate table:
/// cell_id,method,lambda,sigma,mag,n,m,d,trials,mean_ev,std_ev
/// (mean/std over trials with a score; NA when none have one).
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows);
/// The summary file path belonging to a per-trial table path.
std::filesystem::path summary_path(const std::filesystem::path& rows_path);

/// Lower-bound curve specification parsed from JSON.
struct BoundSpec {
  TailModel model = TailModel::gaussian();
  double t_hat_ratio = 1.0;
  std::vector<double> lambdas;
};

BoundSpec parse_bound_spec(const std::string& json_text);

/// Writes `lambda,bound,model,t_hat_ratio` rows for the curve.
void write_bound_csv(const std::filesystem::path& path, const TailModel& model,
                     double t_hat_ratio, std::span<const double> lambdas);

}  // namespace hrpca
