/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/datagen.cpp
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

#include "hrpca/format.hpp"
#include "hrpca/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hrpca {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Mat json_to_mat(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix JSON must be an array");
  const auto rows = static_cast<Index>(j.size());
  if (rows == 0) return Mat(0, 0);
  const auto cols = static_cast<Index>(j.at(0).size());
  Mat out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON has ragged rows");
    for (Index c = 0; c < cols; ++c)
      out(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return out;
}

nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json j = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
  return j;
}

double draw_marginal(RandomEngine& engine, TailModel::Kind kind) {
  switch (kind) {
    case TailModel::Kind::gaussian:
      return engine.normal();
    case TailModel::Kind::uniform:
      return engine.uniform(-kSqrt3, kSqrt3);
    case TailModel::Kind::empirical:
      break;
  }
  throw std::invalid_argument("no sampler for the empirical tail model");
}

}  // namespace

Index GenSpec::authentic_count() const {
  return static_cast<Index>(std::llround((1.0 - lambda) * static_cast<double>(n)));
}

void GenSpec::validate() const {
  if (n < 2) throw std::invalid_argument("GenSpec: n must be >= 2");
  if (m < 1) throw std::invalid_argument("GenSpec: m must be >= 1");
  if (d < 1 || d > m)
    throw std::invalid_argument("GenSpec: d must lie in [1, m]");
  if (!(lambda >= 0.0 && lambda < 0.5))
    throw std::invalid_argument("GenSpec: lambda must lie in [0, 0.5)");
  if (!(sigma > 0.0))
    throw std::invalid_argument("GenSpec: sigma must be positive");
  if (!(mag >= 0.0))
    throw std::invalid_argument("GenSpec: mag must be non-negative");
  if (outlier_lines < 1)
    throw std::invalid_argument("GenSpec: outlier_lines must be >= 1");
  if (!(noise_scale >= 0.0))
    throw std::invalid_argument("GenSpec: noise_scale must be non-negative");
  if (signal_marginal == TailModel::Kind::empirical)
    throw std::invalid_argument(
        "GenSpec: empirical signal marginal has no sampler");
  if (authentic_count() < d + 1)
    throw std::invalid_argument(
        "GenSpec: too few authentic points (need round((1-lambda)n) >= d + 1)");
}

std::pair<ObservationSet, GroundTruth> generate(const GenSpec& spec) {
  spec.validate();
  RandomEngine engine(spec.seed);
  const Index n = spec.n;
  const Index m = spec.m;
  const Index d = spec.d;
  const Index t = spec.authentic_count();
  const Index n_out = n - t;

  // Signal matrix: iid gaussian entries, then the spectrum replaced so all d
  // singular values equal sigma (redraw in the measure-zero degenerate case).
  Mat A(m, d);
  for (int attempt = 0;; ++attempt) {
    for (Index c = 0; c < d; ++c)
      for (Index r = 0; r < m; ++r) A(r, c) = engine.normal();
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()[d - 1] > 1e-12) {
      A = spec.sigma * (svd.matrixU() * svd.matrixV().transpose());
      break;
    }
    if (attempt > 100)
      throw std::runtime_error("generate: degenerate signal matrix draw");
  }

  Mat dirs(m, 0);
  if (n_out > 0) {
    dirs = Mat(m, spec.outlier_lines);
    for (Index l = 0; l < spec.outlier_lines; ++l)
      dirs.col(l) = engine.unit_sphere_vector(m);
  }

  Mat coords(d, t);
  for (Index c = 0; c < t; ++c)
    for (Index r = 0; r < d; ++r)
      coords(r, c) = draw_marginal(engine, spec.signal_marginal);

  Mat raw(m, n);
  raw.leftCols(t) = A * coords;
  if (spec.noise_scale > 0.0) {
    for (Index c = 0; c < t; ++c)
      for (Index r = 0; r < m; ++r)
        raw(r, c) += spec.noise_scale * engine.normal();
  }
  for (Index j = 0; j < n_out; ++j) {
    const double coef = engine.uniform(-spec.sigma * spec.mag, spec.sigma * spec.mag);
    raw.col(t + j) = coef * dirs.col(j % spec.outlier_lines);
  }

  // Fisher-Yates over the column order hides which positions are authentic.
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(
        engine.next_index(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }

  Mat shuffled(m, n);
  GroundTruth truth;
  truth.A = A;
  truth.outlier_dirs = dirs;
  truth.spec = spec;
  std::vector<Index> coord_cols;
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    shuffled.col(k) = raw.col(src);
    if (src < t) {
      truth.authentic_indices.push_back(k);
      coord_cols.push_back(src);
    } else {
      truth.outlier_indices.push_back(k);
    }
  }
  truth.signal_coords = Mat(d, t);
  for (std::size_t q = 0; q < coord_cols.size(); ++q)
    truth.signal_coords.col(static_cast<Index>(q)) = coords.col(coord_cols[q]);

  return {ObservationSet(std::move(shuffled)), std::move(truth)};
}

NoiseDiagnostics noise_explosion_report(const GroundTruth& truth,
                                        const ObservationSet& data) {
  const auto t = static_cast<Index>(truth.authentic_indices.size());
  if (t == 0)
    throw std::invalid_argument("noise_explosion_report: no authentic points");
  if (truth.A.rows() != data.dim())
    throw std::invalid_argument("noise_explosion_report: truth/data dimension mismatch");

  Eigen::HouseholderQR<Mat> qr(truth.A);
  const Mat q_basis =
      qr.householderQ() * Mat::Identity(truth.A.rows(), truth.A.cols());

  double norm_sum = 0.0;
  double cos_sum = 0.0;
  for (Index i = 0; i < t; ++i) {
    const Index col = truth.authentic_indices[static_cast<std::size_t>(i)];
    const Vec y = data.points().col(col);
    const Vec noise = y - truth.A * truth.signal_coords.col(i);
    norm_sum += noise.norm();
    const double y_norm = y.norm();
    if (y_norm > 0.0) cos_sum += (q_basis.transpose() * y).norm() / y_norm;
  }
  return NoiseDiagnostics{norm_sum / static_cast<double>(t),
                          cos_sum / static_cast<double>(t)};
}

std::filesystem::path truth_sidecar_path(const std::filesystem::path& dataset_path) {
  std::filesystem::path p = dataset_path;
  p += ".truth.json";
  return p;
}

void save_dataset(const std::filesystem::path& path, const ObservationSet& data,
                  const GroundTruth& truth) {
  const GenSpec& spec = truth.spec;
  if (data.size() != spec.n || data.dim() != spec.m)
    throw std::invalid_argument("save_dataset: data shape disagrees with its spec");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path.string());
  out << "# " << spec.n << ' ' << spec.m << ' ' << spec.d << ' '
      << format_double(spec.lambda) << ' ' << spec.seed << '\n';
  for (Index k = 0; k < data.size(); ++k) {
    for (Index r = 0; r < data.dim(); ++r) {
      if (r > 0) out << ' ';
      out << format_double(data.points()(r, k));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_dataset: write failed for " + path.string());
  out.close();

  nlohmann::json j;
  j["spec"] = {{"n", spec.n},
               {"m", spec.m},
               {"d", spec.d},
               {"lambda", spec.lambda},
               {"sigma", spec.sigma},
               {"mag", spec.mag},
               {"outlier_lines", spec.outlier_lines},
               {"signal_marginal", tail_kind_name(spec.signal_marginal)},
               {"seed", spec.seed},
               {"noise_scale", spec.noise_scale}};
  j["outlier_indices"] = truth.outlier_indices;
  j["A"] = mat_to_json(truth.A);
  j["signal_coords"] = mat_to_json(truth.signal_coords);
  j["outlier_dirs"] = mat_to_json(truth.outlier_dirs);

  std::ofstream side(truth_sidecar_path(path));
  if (!side)
    throw std::runtime_error("save_dataset: cannot open truth sidecar for " +
                             path.string());
  side << j.dump(2) << '\n';
  if (!side)
    throw std::runtime_error("save_dataset: sidecar write failed for " +
                             path.string());
}

ObservationSet load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header) || header.empty() || header[0] != '#')
    throw std::runtime_error("load_dataset: missing '# n m d lambda seed' header");
  std::istringstream hs(header.substr(1));
  Index n = 0;
  Index m = 0;
  Index d = 0;
  std::string lambda_text;
  std::uint64_t seed = 0;
  if (!(hs >> n >> m >> d >> lambda_text >> seed))
    throw std::runtime_error("load_dataset: malformed header line");
  (void)parse_double(lambda_text);  // validates the field
  if (n < 1 || m < 1 || d < 1)
    throw std::runtime_error("load_dataset: header sizes must be positive");

  Mat points(m, n);
  std::string token;
  for (Index k = 0; k < n; ++k)
    for (Index r = 0; r < m; ++r) {
      if (!(in >> token))
        throw std::runtime_error("load_dataset: file ends before " +
                                 std::to_string(n) + " points were read");
      points(r, k) = parse_double(token);
    }
  if (in >> token)
    throw std::runtime_error("load_dataset: trailing data beyond the declared shape");
  return ObservationSet(std::move(points));
}

GroundTruth load_truth(const std::filesystem::path& dataset_path) {
  const auto side_path = truth_sidecar_path(dataset_path);
  std::ifstream in(side_path);
  if (!in)
    throw std::runtime_error("load_truth: missing sidecar " + side_path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_truth: malformed sidecar " + side_path.string() +
                             ": " + e.what());
  }

  GroundTruth truth;
  const auto& js = j.at("spec");
  truth.spec.n = js.at("n").get<Index>();
  truth.spec.m = js.at("m").get<Index>();
  truth.spec.d = js.at("d").get<Index>();
  truth.spec.lambda = js.at("lambda").get<double>();
  truth.spec.sigma = js.at("sigma").get<double>();
  truth.spec.mag = js.at("mag").get<double>();
  truth.spec.outlier_lines = js.at("outlier_lines").get<Index>();
  truth.spec.signal_marginal =
      parse_tail_kind(js.at("signal_marginal").get<std::string>());
  truth.spec.seed = js.at("seed").get<std::uint64_t>();
  truth.spec.noise_scale = js.at("noise_scale").get<double>();

  truth.outlier_indices = j.at("outlier_indices").get<std::vector<Index>>();
  truth.A = json_to_mat(j.at("A"));
  truth.signal_coords = json_to_mat(j.at("signal_coords"));
  truth.outlier_dirs = json_to_mat(j.at("outlier_dirs"));

  std::vector<bool> is_outlier(static_cast<std::size_t>(truth.spec.n), false);
  for (Index idx : truth.outlier_indices) {
    if (idx < 0 || idx >= truth.spec.n)
      throw std::runtime_error("load_truth: outlier index out of range");
    is_outlier[static_cast<std::size_t>(idx)] = true;
  }
  for (Index k = 0; k < truth.spec.n; ++k)
    if (!is_outlier[static_cast<std::size_t>(k)])
      truth.authentic_indices.push_back(k);
  return truth;
}

}  // namespace hrpca
