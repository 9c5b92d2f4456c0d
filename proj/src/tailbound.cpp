/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/tailbound.cpp
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

#include "hrpca/tailbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hrpca {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double gaussian_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Adaptive Simpson quadrature with the usual Richardson acceptance test.
double adaptive_simpson_step(const std::function<double(double)>& f, double a,
                             double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

TailModel TailModel::gaussian() { return TailModel(Kind::gaussian, "gaussian"); }

TailModel TailModel::uniform() { return TailModel(Kind::uniform, "uniform"); }

TailModel TailModel::empirical(std::vector<double> samples) {
  const auto n = samples.size();
  if (n < 2)
    throw std::invalid_argument("empirical tail model: need at least 2 samples");
  double mean = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x))
      throw std::invalid_argument("empirical tail model: non-finite sample");
    mean += x;
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);  // population variance
  if (!(var > 0.0))
    throw std::invalid_argument("empirical tail model: samples have zero variance");

  TailModel model(Kind::empirical, "empirical");
  const double sd = std::sqrt(var);
  model.abs_sorted_.reserve(n);
  for (double x : samples) model.abs_sorted_.push_back(std::abs((x - mean) / sd));
  std::sort(model.abs_sorted_.begin(), model.abs_sorted_.end());
  model.prefix_squares_.resize(n + 1);
  model.prefix_squares_[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    model.prefix_squares_[k + 1] =
        model.prefix_squares_[k] + model.abs_sorted_[k] * model.abs_sorted_[k];
  return model;
}

void TailModel::set_quad_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("quad_tol must be positive and finite");
  quad_tol_ = tol;
}

double TailModel::symmetric_mass(double c) const {
  if (!(c >= 0.0)) throw std::invalid_argument("symmetric_mass: c must be >= 0");
  switch (kind_) {
    case Kind::gaussian:
      return std::erf(c / std::sqrt(2.0));
    case Kind::uniform:
      return std::min(1.0, c / kSqrt3);
    case Kind::empirical: {
      const auto it =
          std::upper_bound(abs_sorted_.begin(), abs_sorted_.end(), c);
      return static_cast<double>(it - abs_sorted_.begin()) /
             static_cast<double>(abs_sorted_.size());
    }
  }
  throw std::logic_error("symmetric_mass: unreachable");
}

double TailModel::support_radius() const {
  switch (kind_) {
    case Kind::gaussian:
      return std::numeric_limits<double>::infinity();
    case Kind::uniform:
      return kSqrt3;
    case Kind::empirical:
      return abs_sorted_.back();
  }
  throw std::logic_error("support_radius: unreachable");
}

double c_alpha(const TailModel& model, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("c_alpha: alpha must lie in [0, 1]");
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return model.support_radius();

  if (model.kind() == TailModel::Kind::empirical) {
    const auto n = model.abs_sorted().size();
    const auto k = static_cast<std::size_t>(
        std::llround(alpha * static_cast<double>(n)));
    if (k == 0) return 0.0;
    return model.abs_sorted()[std::min(k, n) - 1];
  }

  double lo = 0.0;
  double hi = 1.0;
  while (model.symmetric_mass(hi) < alpha) {
    hi *= 2.0;
    if (hi > 1e12)
      throw std::runtime_error("c_alpha: quantile bracket failed to close");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (model.symmetric_mass(mid) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double tail_weight(const TailModel& model, double alpha) {
  if (!std::isfinite(alpha))
    throw std::invalid_argument("tail_weight: alpha must be finite");
  if (alpha < 0.0) return 0.0;
  if (alpha > 1.0) return std::numeric_limits<double>::infinity();
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return 1.0;  // unit variance by construction

  if (model.kind() == TailModel::Kind::empirical) {
    const auto n = model.abs_sorted().size();
    const auto k = std::min(
        static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n))), n);
    return model.prefix_squares()[k] / static_cast<double>(n);
  }

  const double c = c_alpha(model, alpha);
  if (model.kind() == TailModel::Kind::uniform) {
    const auto f = [](double x) { return x * x / (2.0 * kSqrt3); };
    return 2.0 * adaptive_simpson(f, 0.0, c, 0.5 * model.quad_tol());
  }
  const auto f = [](double x) { return x * x * gaussian_pdf(x); };
  return 2.0 * adaptive_simpson(f, 0.0, c, 0.5 * model.quad_tol());
}

std::vector<double> BoundQuery::default_kappa_grid(int points) {
  if (points < 2)
    throw std::invalid_argument("default_kappa_grid: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::log(1e-4);
  const double hi = std::log(1e4);
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(points - 1));
  return grid;
}

double asymptotic_bound(const TailModel& model, const BoundQuery& query) {
  const double lam = query.lambda_star;
  if (!(lam >= 0.0 && lam < 0.5))
    throw std::invalid_argument("asymptotic_bound: lambda_star must lie in [0, 0.5)");
  const double ratio = query.t_hat_ratio;
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw std::invalid_argument("asymptotic_bound: t_hat_ratio must lie in (0, 1]");
  if (query.kappa_grid.empty())
    throw std::invalid_argument("asymptotic_bound: empty kappa grid");
  for (double k : query.kappa_grid)
    if (!(k > 0.0) || !std::isfinite(k))
      throw std::invalid_argument("asymptotic_bound: kappa grid must be positive");

  const double denom = tail_weight(model, ratio);
  if (!(denom > 0.0))
    throw std::runtime_error(
        "asymptotic_bound: trim level below contamination (no tail weight)");
  // Kappa-independent factor; the V(x<0) = 0 convention makes the bound 0,
  // not an error, when the trim window fails to clear the contamination.
  const double shift = lam / (1.0 - lam);
  const double second = tail_weight(model, ratio - shift) / denom;

  const auto objective = [&](double kappa) {
    const double arg = 1.0 - shift * (1.0 + kappa) / kappa;
    return tail_weight(model, arg) / (1.0 + kappa);
  };

  std::size_t best_i = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < query.kappa_grid.size(); ++i) {
    const double v = objective(query.kappa_grid[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  // Golden-section refinement (in log kappa) around the grid argmax.
  const std::size_t lo_i = best_i > 0 ? best_i - 1 : best_i;
  const std::size_t hi_i =
      best_i + 1 < query.kappa_grid.size() ? best_i + 1 : best_i;
  double a = std::log(query.kappa_grid[lo_i]);
  double b = std::log(query.kappa_grid[hi_i]);
  if (b > a) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = objective(std::exp(x1));
    double f2 = objective(std::exp(x2));
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = objective(std::exp(x2));
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = objective(std::exp(x1));
      }
    }
    best = std::max(best, std::max(f1, f2));
  }

  return best * second;
}

std::string tail_kind_name(TailModel::Kind kind) {
  switch (kind) {
    case TailModel::Kind::gaussian:
      return "gaussian";
    case TailModel::Kind::uniform:
      return "uniform";
    case TailModel::Kind::empirical:
      return "empirical";
  }
  throw std::logic_error("tail_kind_name: unreachable");
}

TailModel::Kind parse_tail_kind(const std::string& name) {
  if (name == "gaussian") return TailModel::Kind::gaussian;
  if (name == "uniform") return TailModel::Kind::uniform;
  if (name == "empirical") return TailModel::Kind::empirical;
  throw std::invalid_argument("unknown tail model '" + name + "'");
}

std::vector<BoundPoint> bound_curve(const TailModel& model,
                                    std::span<const double> lambdas,
                                    double t_hat_ratio) {
  std::vector<BoundPoint> curve;
  curve.reserve(lambdas.size());
  for (double lam : lambdas) {
    BoundQuery q;
    q.lambda_star = lam;
    q.t_hat_ratio = t_hat_ratio;
    curve.push_back(BoundPoint{lam, asymptotic_bound(model, q)});
  }
  return curve;
}

}  // namespace hrpca
