/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: tools/hrpca_main.cpp
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

#include "hrpca/datagen.hpp"
#include "hrpca/experiment.hpp"
#include "hrpca/rng.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenerateArgs {
  std::string spec_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& args) {
  hrpca::GenSpec spec = hrpca::parse_gen_spec(read_file(args.spec_path));
  if (args.seed) spec.seed = *args.seed;
  const auto [data, truth] = hrpca::generate(spec);
  hrpca::save_dataset(args.out_path, data, truth);
  std::cout << "wrote " << data.size() << " points of dimension " << data.dim()
            << " (" << truth.outlier_indices.size() << " outliers) to "
            << args.out_path << "\n";
  return 0;
}

struct RunArgs {
  std::string dataset_path;
  std::string method = "hrpca";
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  hrpca::MethodParams params;
};

int cmd_run(const RunArgs& args) {
  const hrpca::Method method = hrpca::parse_method(args.method);
  const hrpca::ObservationSet data = hrpca::load_dataset(args.dataset_path);

  // Scoring against the truth is best-effort: a dataset without its sidecar
  // still runs, it just cannot report expressed variance.
  std::optional<hrpca::GroundTruth> truth;
  try {
    truth = hrpca::load_truth(args.dataset_path);
  } catch (const std::exception& e) {
    std::cerr << "note: no ground truth (" << e.what() << "); ev will be NA\n";
  }

  hrpca::ResultRow row;
  row.method = hrpca::method_name(method);
  row.n = data.size();
  row.m = data.dim();
  row.d = truth ? truth->spec.d : 1;
  if (truth) {
    row.lambda = truth->spec.lambda;
    row.sigma = truth->spec.sigma;
    row.mag = truth->spec.mag;
  }
  row.seed = args.seed.value_or(truth ? truth->spec.seed : 0);

  const hrpca::RunRecord rec =
      hrpca::run_method(method, data, truth ? &*truth : nullptr, row.d,
                        row.seed, args.params);
  row.ev = rec.ev;
  row.opt = rec.opt;
  row.status = rec.status;
  row.runtime_ms = rec.runtime_ms;

  if (args.out_path) {
    hrpca::append_row_csv(*args.out_path, row);
    std::cout << "appended " << row.method << " row to " << *args.out_path << "\n";
  } else {
    std::cout << hrpca::csv_header() << "\n" << hrpca::to_csv(row) << "\n";
  }
  return rec.status.rfind("ok", 0) == 0 ? 0 : 1;
}

struct SweepArgs {
  std::string spec_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int cmd_sweep(const SweepArgs& args) {
  hrpca::ExperimentSpec spec =
      hrpca::parse_experiment_spec(read_file(args.spec_path));
  if (args.seed) spec.base_seed = *args.seed;
  if (args.threads) spec.threads = *args.threads;
  const hrpca::SweepResult result = hrpca::run_sweep(spec);
  hrpca::write_rows_csv(args.out_path, result.rows);
  const auto summary = hrpca::summary_path(args.out_path);
  hrpca::write_summary_csv(summary, result.rows);
  std::cout << "wrote " << result.rows.size() << " rows to " << args.out_path
            << " (summary: " << summary.string() << ")\n";
  return 0;
}

struct BoundArgs {
  std::string spec_path;
  std::string out_path;
};

int cmd_bound(const BoundArgs& args) {
  const hrpca::BoundSpec spec = hrpca::parse_bound_spec(read_file(args.spec_path));
  hrpca::write_bound_csv(args.out_path, spec.model, spec.t_hat_ratio,
                         spec.lambdas);
  std::cout << "wrote " << spec.lambdas.size() << " bound rows to "
            << args.out_path << "\n";
  return 0;
}

void add_method_param_flags(CLI::App* cmd, hrpca::MethodParams& params,
                            std::optional<hrpca::Index>& t_hat,
                            std::optional<hrpca::Index>& t_bar) {
  cmd->add_option("--t-hat", t_hat,
                  "Trim level of the robust variance (default ceil(n/2))");
  cmd->add_option("--t-bar", t_bar,
                  "Removal iterations beyond the first (default n-d-1)");
  cmd->add_flag("--center", params.center, "Center the data before running");
  cmd->add_option("--rbf-gamma", params.rbf_gamma,
                  "RBF kernel bandwidth (kpca-rbf)");
  cmd->add_option("--poly-degree", params.poly_degree,
                  "Polynomial kernel degree (kpca-poly)");
  cmd->add_option("--poly-offset", params.poly_offset,
                  "Polynomial kernel offset (kpca-poly)");
  cmd->add_option("--mvt-trim", params.mvt.trim_fraction,
                  "Fraction trimmed per mvt round");
  cmd->add_option("--mvt-iters", params.mvt.iterations, "mvt rounds");
  cmd->add_option("--pp-trim", params.pp_trim,
                  "Trim level of the pp score (default ceil(n/2))");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust PCA toolkit: dataset generation, estimators, sweeps, "
               "and asymptotic lower-bound curves"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Generate a contaminated dataset");
  gen->add_option("--spec", gen_args.spec_path, "Generator spec (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  gen->add_option("--out", gen_args.out_path, "Output dataset path")->required();
  gen->add_option("--seed", gen_args.seed, "Overrides the spec's seed");

  RunArgs run_args;
  std::optional<hrpca::Index> run_t_hat;
  std::optional<hrpca::Index> run_t_bar;
  auto* run = app.add_subcommand("run", "Run one estimator on a dataset file");
  run->add_option("dataset", run_args.dataset_path, "Dataset file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--method", run_args.method,
                  "pca | hrpca | kpca-linear | kpca-rbf | kpca-poly | mvt | pp");
  run->add_option("--out", run_args.out_path,
                  "CSV to append the result row to (default: print to stdout)");
  run->add_option("--seed", run_args.seed,
                  "Algorithm seed (default: the dataset's seed)");
  add_method_param_flags(run, run_args.params, run_t_hat, run_t_bar);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a full factorial experiment");
  sweep->add_option("--spec", sweep_args.spec_path, "Experiment spec (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_args.out_path, "Per-trial CSV path")->required();
  sweep->add_option("--seed", sweep_args.seed, "Overrides the spec's base_seed");
  sweep->add_option("--threads", sweep_args.threads, "Concurrent trials");

  BoundArgs bound_args;
  auto* bound =
      app.add_subcommand("bound", "Tabulate the asymptotic lower bound");
  bound->add_option("--spec", bound_args.spec_path, "Bound spec (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  bound->add_option("--out", bound_args.out_path, "Bound CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (run->parsed()) {
      run_args.params.t_hat = run_t_hat;
      run_args.params.t_bar = run_t_bar;
      return cmd_run(run_args);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (bound->parsed()) return cmd_bound(bound_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
