/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/experiment.cpp
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

#include "hrpca/experiment.hpp"

#include "hrpca/kernel.hpp"
#include "hrpca/linalg.hpp"
#include "hrpca/metrics.hpp"
#include "hrpca/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hrpca {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string optional_to_csv(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

std::optional<double> optional_from_csv(const std::string& text) {
  if (text == "NA") return std::nullopt;
  return parse_double(text);
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::pca:
      return "pca";
    case Method::hrpca:
      return "hrpca";
    case Method::kpca_linear:
      return "kpca-linear";
    case Method::kpca_rbf:
      return "kpca-rbf";
    case Method::kpca_poly:
      return "kpca-poly";
    case Method::mvt:
      return "mvt";
    case Method::pp:
      return "pp";
  }
  throw std::logic_error("method_name: unreachable");
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods())
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<Method> all_methods() {
  // Alphabetical by name, the order output files sort in.
  return {Method::hrpca,      Method::kpca_linear, Method::kpca_poly,
          Method::kpca_rbf,   Method::mvt,         Method::pca,
          Method::pp};
}

RunRecord run_method(Method method, const ObservationSet& data,
                     const GroundTruth* truth, Index d, std::uint64_t seed,
                     const MethodParams& params) {
  RunRecord rec;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Index n = data.size();
    const Index t_hat = params.t_hat.value_or(default_t_hat(n));

    HrPcaConfig cfg;
    cfg.d = d;
    cfg.t_bar = params.t_bar;
    cfg.t_hat = params.t_hat;
    cfg.seed = seed;
    cfg.center = params.center;

    std::optional<Basis> basis;
    switch (method) {
      case Method::pca:
        basis = pca_baseline(data, d);
        break;
      case Method::hrpca: {
        HrPcaResult res = run(data, cfg);
        basis = res.basis;
        rec.opt = res.opt;
        break;
      }
      case Method::kpca_linear:
      case Method::kpca_rbf:
      case Method::kpca_poly: {
        KernelFn kernel = KernelFn::linear();
        if (method == Method::kpca_rbf) kernel = KernelFn::rbf(params.rbf_gamma);
        if (method == Method::kpca_poly)
          kernel = KernelFn::polynomial(params.poly_degree, params.poly_offset);
        KernelRunResult res = run_kernel(data, kernel, cfg);
        rec.opt = res.opt;
        if (res.rank_deficient) rec.status = "ok (rank-deficient)";
        if (method == Method::kpca_linear &&
            res.model.direction_count() >= 1) {
          // Linear-kernel directions live in the input space; rebuild them
          // from the expansion (minus the centering shift when centered).
          Mat support = res.model.support_points.points();
          if (params.center)
            support.colwise() -= Vec(data.points().rowwise().mean());
          Mat w = support * res.model.coefficients;
          basis = Basis(orthonormalize(w));
        }
        break;
      }
      case Method::mvt:
        basis = mvt(data, d, params.mvt).basis;
        break;
      case Method::pp: {
        PpConfig pp_cfg;
        pp_cfg.trim_level = params.pp_trim;
        basis = pp_approx(data, d, pp_cfg);
        break;
      }
    }

    if (basis && !rec.opt) rec.opt = rve(*basis, data, t_hat);
    if (basis && truth != nullptr)
      rec.ev = expressed_variance(*basis, truth->A).ev;
  } catch (const std::exception& e) {
    rec.ev.reset();
    rec.opt.reset();
    rec.status = e.what();
  }
  const auto stop = std::chrono::steady_clock::now();
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

std::string csv_header() {
  return "cell_id,method,lambda,sigma,mag,n,m,d,trial,seed,ev,opt,status,runtime_ms";
}

std::string to_csv(const ResultRow& row) {
  std::string status = row.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::ostringstream out;
  out << row.cell_id << ',' << row.method << ',' << format_double(row.lambda)
      << ',' << format_double(row.sigma) << ',' << format_double(row.mag) << ','
      << row.n << ',' << row.m << ',' << row.d << ',' << row.trial << ','
      << row.seed << ',' << optional_to_csv(row.ev) << ','
      << optional_to_csv(row.opt) << ',' << status << ','
      << format_double(row.runtime_ms);
  return out.str();
}

ResultRow parse_csv_row(const std::string& line) {
  const auto fields = split_csv(line);
  if (fields.size() != 14)
    throw std::invalid_argument("parse_csv_row: expected 14 fields, got " +
                                std::to_string(fields.size()));
  ResultRow row;
  row.cell_id = std::stoll(fields[0]);
  row.method = fields[1];
  row.lambda = parse_double(fields[2]);
  row.sigma = parse_double(fields[3]);
  row.mag = parse_double(fields[4]);
  row.n = static_cast<Index>(std::stoll(fields[5]));
  row.m = static_cast<Index>(std::stoll(fields[6]));
  row.d = static_cast<Index>(std::stoll(fields[7]));
  row.trial = std::stoi(fields[8]);
  row.seed = std::stoull(fields[9]);
  row.ev = optional_from_csv(fields[10]);
  row.opt = optional_from_csv(fields[11]);
  row.status = fields[12];
  row.runtime_ms = parse_double(fields[13]);
  return row;
}

Index ExperimentSpec::cell_count() const {
  return static_cast<Index>(lambdas.size() * sigmas.size() * mags.size() *
                            ns.size() * ms.size() * ds.size());
}

GenSpec ExperimentSpec::cell_spec(Index cell_id) const {
  if (cell_id < 0 || cell_id >= cell_count())
    throw std::invalid_argument("cell_spec: cell_id out of range");
  Index rem = cell_id;
  const auto pick = [&rem](const auto& axis) {
    const auto size = static_cast<Index>(axis.size());
    const Index i = rem % size;
    rem /= size;
    return axis[static_cast<std::size_t>(i)];
  };
  // Axes unwind minor-to-major: d fastest, lambda slowest.
  GenSpec g;
  g.d = pick(ds);
  g.m = pick(ms);
  g.n = pick(ns);
  g.mag = pick(mags);
  g.sigma = pick(sigmas);
  g.lambda = pick(lambdas);
  g.outlier_lines = outlier_lines.value_or(g.d);
  g.signal_marginal = signal_marginal;
  g.seed = 0;
  return g;
}

void ExperimentSpec::validate() const {
  if (lambdas.empty() || sigmas.empty() || mags.empty() || ns.empty() ||
      ms.empty() || ds.empty())
    throw std::invalid_argument("ExperimentSpec: every axis needs at least one value");
  if (methods.empty())
    throw std::invalid_argument("ExperimentSpec: at least one method required");
  for (std::size_t i = 0; i < methods.size(); ++i)
    for (std::size_t j = i + 1; j < methods.size(); ++j)
      if (methods[i] == methods[j])
        throw std::invalid_argument("ExperimentSpec: duplicate method '" +
                                    method_name(methods[i]) + "'");
  if (trials < 1)
    throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  if (threads < 1)
    throw std::invalid_argument("ExperimentSpec: threads must be >= 1");
  for (Index c = 0; c < cell_count(); ++c) cell_spec(c).validate();
}

SweepResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const Index cells = spec.cell_count();
  const Index jobs = cells * spec.trials;
  std::vector<std::vector<ResultRow>> slots(static_cast<std::size_t>(jobs));

  const auto worker = [&spec, &slots](Index job) {
    const Index cell = job / spec.trials;
    const int trial = static_cast<int>(job % spec.trials);
    GenSpec g = spec.cell_spec(cell);
    g.seed = mix_seed(spec.base_seed, static_cast<std::uint64_t>(cell),
                      static_cast<std::uint64_t>(trial));
    const auto [data, truth] = generate(g);
    auto& out = slots[static_cast<std::size_t>(job)];
    out.reserve(spec.methods.size());
    for (Method mth : spec.methods) {
      // Method randomness is derived from the trial's data seed per method
      // name: adding or reordering methods perturbs nothing else.
      const std::uint64_t mseed =
          mix_seed(g.seed, fnv1a(method_name(mth)), 0x6d657468);
      ResultRow row;
      row.cell_id = cell;
      row.method = method_name(mth);
      row.lambda = g.lambda;
      row.sigma = g.sigma;
      row.mag = g.mag;
      row.n = g.n;
      row.m = g.m;
      row.d = g.d;
      row.trial = trial;
      row.seed = g.seed;
      const RunRecord rec = run_method(mth, data, &truth, g.d, mseed, spec.params);
      row.ev = rec.ev;
      row.opt = rec.opt;
      row.status = rec.status;
      row.runtime_ms = rec.runtime_ms;
      out.push_back(std::move(row));
    }
  };

  if (spec.threads == 1 || jobs <= 1) {
    for (Index job = 0; job < jobs; ++job) worker(job);
  } else {
    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto pool_size = static_cast<std::size_t>(
        std::min<Index>(spec.threads, jobs));
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
      pool.emplace_back([&]() {
        for (;;) {
          const Index job = next.fetch_add(1);
          if (job >= jobs) return;
          try {
            worker(job);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepResult result;
  result.rows.reserve(static_cast<std::size_t>(jobs) * spec.methods.size());
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  std::sort(result.rows.begin(), result.rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tie(a.cell_id, a.method, a.trial) <
                     std::tie(b.cell_id, b.method, b.trial);
            });
  return result;
}

void write_rows_csv(const std::filesystem::path& path,
                    const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_rows_csv: cannot open " + path.string());
  out << csv_header() << '\n';
  for (const auto& row : rows) out << to_csv(row) << '\n';
  if (!out)
    throw std::runtime_error("write_rows_csv: write failed for " + path.string());
}

void append_row_csv(const std::filesystem::path& path, const ResultRow& row) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw std::runtime_error("append_row_csv: cannot open " + path.string());
  if (fresh) out << csv_header() << '\n';
  out << to_csv(row) << '\n';
  if (!out)
    throw std::runtime_error("append_row_csv: write failed for " + path.string());
}

std::filesystem::path summary_path(const std::filesystem::path& rows_path) {
  std::filesystem::path p = rows_path;
  const std::string stem = p.stem().string();
  const std::string ext = p.extension().string();
  p.replace_filename(stem + "_summary" + (ext.empty() ? ".csv" : ext));
  return p;
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows) {
  std::vector<ResultRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tie(a.cell_id, a.method, a.trial) <
                     std::tie(b.cell_id, b.method, b.trial);
            });

  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_summary_csv: cannot open " + path.string());
  out << "cell_id,method,lambda,sigma,mag,n,m,d,trials,mean_ev,std_ev\n";

  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].cell_id == sorted[i].cell_id &&
           sorted[j].method == sorted[i].method)
      ++j;
    double sum = 0.0;
    Index scored = 0;
    for (std::size_t k = i; k < j; ++k)
      if (sorted[k].ev) {
        sum += *sorted[k].ev;
        ++scored;
      }
    std::string mean_text = "NA";
    std::string std_text = "NA";
    if (scored > 0) {
      const double mean = sum / static_cast<double>(scored);
      double ss = 0.0;
      for (std::size_t k = i; k < j; ++k)
        if (sorted[k].ev) ss += (*sorted[k].ev - mean) * (*sorted[k].ev - mean);
      const double sd =
          scored > 1 ? std::sqrt(ss / static_cast<double>(scored - 1)) : 0.0;
      mean_text = format_double(mean);
      std_text = format_double(sd);
    }
    const ResultRow& head = sorted[i];
    out << head.cell_id << ',' << head.method << ',' << format_double(head.lambda)
        << ',' << format_double(head.sigma) << ',' << format_double(head.mag)
        << ',' << head.n << ',' << head.m << ',' << head.d << ',' << (j - i)
        << ',' << mean_text << ',' << std_text << '\n';
    i = j;
  }
  if (!out)
    throw std::runtime_error("write_summary_csv: write failed for " + path.string());
}

namespace {

nlohmann::json parse_json_text(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": malformed JSON: " + e.what());
  }
}

void reject_unknown_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> known,
                         const char* what) {
  for (const auto& item : j.items()) {
    bool found = false;
    for (const char* key : known)
      if (item.key() == key) {
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument(std::string(what) + ": unknown key '" +
                                  item.key() + "'");
  }
}

std::vector<double> double_axis(const nlohmann::json& j) {
  std::vector<double> axis;
  if (j.is_array())
    for (const auto& v : j) axis.push_back(v.get<double>());
  else
    axis.push_back(j.get<double>());
  return axis;
}

std::vector<Index> index_axis(const nlohmann::json& j) {
  std::vector<Index> axis;
  if (j.is_array())
    for (const auto& v : j) axis.push_back(v.get<Index>());
  else
    axis.push_back(j.get<Index>());
  return axis;
}

void apply_method_params(const nlohmann::json& j, MethodParams& params) {
  if (j.contains("t_hat")) params.t_hat = j.at("t_hat").get<Index>();
  if (j.contains("t_bar")) params.t_bar = j.at("t_bar").get<Index>();
  if (j.contains("center")) params.center = j.at("center").get<bool>();
  if (j.contains("rbf_gamma")) params.rbf_gamma = j.at("rbf_gamma").get<double>();
  if (j.contains("poly_degree"))
    params.poly_degree = j.at("poly_degree").get<int>();
  if (j.contains("poly_offset"))
    params.poly_offset = j.at("poly_offset").get<double>();
  if (j.contains("mvt_trim_fraction"))
    params.mvt.trim_fraction = j.at("mvt_trim_fraction").get<double>();
  if (j.contains("mvt_iterations"))
    params.mvt.iterations = j.at("mvt_iterations").get<int>();
  if (j.contains("pp_trim")) params.pp_trim = j.at("pp_trim").get<Index>();
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  const nlohmann::json j = parse_json_text(json_text, "experiment spec");
  if (!j.is_object())
    throw std::invalid_argument("experiment spec: top level must be an object");
  reject_unknown_keys(
      j,
      {"lambda", "sigma", "mag", "n", "m", "d", "outlier_lines",
       "signal_marginal", "methods", "trials", "base_seed", "threads", "t_hat",
       "t_bar", "center", "rbf_gamma", "poly_degree", "poly_offset",
       "mvt_trim_fraction", "mvt_iterations", "pp_trim"},
      "experiment spec");

  ExperimentSpec spec;
  if (j.contains("lambda")) spec.lambdas = double_axis(j.at("lambda"));
  if (j.contains("sigma")) spec.sigmas = double_axis(j.at("sigma"));
  if (j.contains("mag")) spec.mags = double_axis(j.at("mag"));
  if (j.contains("n")) spec.ns = index_axis(j.at("n"));
  if (j.contains("m")) spec.ms = index_axis(j.at("m"));
  if (j.contains("d")) spec.ds = index_axis(j.at("d"));
  if (j.contains("outlier_lines"))
    spec.outlier_lines = j.at("outlier_lines").get<Index>();
  if (j.contains("signal_marginal"))
    spec.signal_marginal =
        parse_tail_kind(j.at("signal_marginal").get<std::string>());
  if (j.contains("methods")) {
    spec.methods.clear();
    for (const auto& name : j.at("methods"))
      spec.methods.push_back(parse_method(name.get<std::string>()));
  }
  if (j.contains("trials")) spec.trials = j.at("trials").get<int>();
  if (j.contains("base_seed"))
    spec.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
  apply_method_params(j, spec.params);
  spec.validate();
  return spec;
}

GenSpec parse_gen_spec(const std::string& json_text) {
  const nlohmann::json j = parse_json_text(json_text, "generator spec");
  if (!j.is_object())
    throw std::invalid_argument("generator spec: top level must be an object");
  reject_unknown_keys(j,
                      {"n", "m", "d", "lambda", "sigma", "mag", "outlier_lines",
                       "signal_marginal", "seed", "noise_scale"},
                      "generator spec");
  GenSpec spec;
  if (j.contains("n")) spec.n = j.at("n").get<Index>();
  if (j.contains("m")) spec.m = j.at("m").get<Index>();
  if (j.contains("d")) spec.d = j.at("d").get<Index>();
  if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
  if (j.contains("sigma")) spec.sigma = j.at("sigma").get<double>();
  if (j.contains("mag")) spec.mag = j.at("mag").get<double>();
  if (j.contains("outlier_lines"))
    spec.outlier_lines = j.at("outlier_lines").get<Index>();
  else
    spec.outlier_lines = spec.d;
  if (j.contains("signal_marginal"))
    spec.signal_marginal =
        parse_tail_kind(j.at("signal_marginal").get<std::string>());
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("noise_scale"))
    spec.noise_scale = j.at("noise_scale").get<double>();
  spec.validate();
  return spec;
}

BoundSpec parse_bound_spec(const std::string& json_text) {
  const nlohmann::json j = parse_json_text(json_text, "bound spec");
  if (!j.is_object())
    throw std::invalid_argument("bound spec: top level must be an object");
  reject_unknown_keys(j, {"model", "t_hat_ratio", "lambdas", "lambda_grid"},
                      "bound spec");

  BoundSpec spec;
  if (j.contains("model")) {
    const auto& jm = j.at("model");
    if (jm.is_string()) {
      const auto kind = parse_tail_kind(jm.get<std::string>());
      if (kind == TailModel::Kind::gaussian)
        spec.model = TailModel::gaussian();
      else if (kind == TailModel::Kind::uniform)
        spec.model = TailModel::uniform();
      else
        throw std::invalid_argument(
            "bound spec: empirical model needs a sample array "
            "({\"empirical\": [...]})");
    } else if (jm.is_object() && jm.contains("empirical")) {
      spec.model = TailModel::empirical(
          jm.at("empirical").get<std::vector<double>>());
    } else {
      throw std::invalid_argument("bound spec: unrecognized model form");
    }
  }
  if (j.contains("t_hat_ratio"))
    spec.t_hat_ratio = j.at("t_hat_ratio").get<double>();

  if (j.contains("lambdas") && j.contains("lambda_grid"))
    throw std::invalid_argument("bound spec: give lambdas or lambda_grid, not both");
  if (j.contains("lambdas")) {
    spec.lambdas = j.at("lambdas").get<std::vector<double>>();
  } else if (j.contains("lambda_grid")) {
    const auto& g = j.at("lambda_grid");
    reject_unknown_keys(g, {"min", "max", "count"}, "bound spec lambda_grid");
    const double lo = g.at("min").get<double>();
    const double hi = g.at("max").get<double>();
    const int count = g.at("count").get<int>();
    if (count < 1 || !(hi >= lo))
      throw std::invalid_argument("bound spec: bad lambda_grid");
    for (int i = 0; i < count; ++i)
      spec.lambdas.push_back(
          count == 1 ? lo
                     : lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
  } else {
    throw std::invalid_argument("bound spec: lambdas or lambda_grid required");
  }
  if (spec.lambdas.empty())
    throw std::invalid_argument("bound spec: empty lambda list");
  return spec;
}

void write_bound_csv(const std::filesystem::path& path, const TailModel& model,
                     double t_hat_ratio, std::span<const double> lambdas) {
  const auto curve = bound_curve(model, lambdas, t_hat_ratio);
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_bound_csv: cannot open " + path.string());
  out << "lambda,bound,model,t_hat_ratio\n";
  for (const auto& point : curve)
    out << format_double(point.lambda) << ',' << format_double(point.bound)
        << ',' << model.name() << ',' << format_double(t_hat_ratio) << '\n';
  if (!out)
    throw std::runtime_error("write_bound_csv: write failed for " + path.string());
}

}  // namespace hrpca
