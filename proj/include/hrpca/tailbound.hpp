/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/tailbound.hpp
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

#include <span>
#include <string>
#include <vector>

namespace hrpca {

/**
 * @brief Symmetric, zero-mean, unit-variance marginal distribution used by
 *        the tail-weight function.
 *
 * Three flavors: the standard gaussian, the uniform on [-sqrt(3), sqrt(3)],
 * and an empirical model built from samples (symmetrized through |x| and
 * standardized to zero mean / unit population variance at construction).
 */
class TailModel {
public:
  enum class Kind { gaussian, uniform, empirical };

  static TailModel gaussian();
  static TailModel uniform();
  /// Throws if fewer than 2 samples, any non-finite, or zero variance.
  static TailModel empirical(std::vector<double> samples);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Absolute tolerance of the quadrature behind tail_weight (gaussian /
  /// uniform kinds). Default 1e-10.
  double quad_tol() const { return quad_tol_; }
  void set_quad_tol(double tol);

  /// Probability mass of [-c, c], c >= 0.
  double symmetric_mass(double c) const;
  /// Largest |x| carrying mass (+infinity for the gaussian).
  double support_radius() const;

  /// Sorted |x| of the standardized empirical samples (empirical kind only).
  const std::vector<double>& abs_sorted() const { return abs_sorted_; }
  /// prefix_squares()[k] = sum of the k smallest |x|^2 (empirical kind only).
  const std::vector<double>& prefix_squares() const { return prefix_squares_; }

private:
  TailModel(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_ = Kind::gaussian;
  std::string name_;
  double quad_tol_ = 1e-10;
  std::vector<double> abs_sorted_;
  std::vector<double> prefix_squares_;
};

/**
 * @brief Symmetric quantile radius: the smallest c >= 0 with mass of [-c, c]
 *        at least alpha.
 *
 * Bisection to an interval width of 1e-12 for the continuous models (the
 * achieved mass then matches alpha to well under 1e-10); the empirical model
 * returns the round(alpha * N)-th smallest |sample| directly. alpha must lie
 * in [0, 1]; alpha = 0 gives 0, alpha = 1 gives the support radius.
 */
double c_alpha(const TailModel& model, double alpha);

/**
 * @brief Tail weight: the second moment of the distribution restricted to
 *        its central alpha-mass window, V(alpha) = integral of x^2 over
 *        [-c_alpha, c_alpha].
 *
 * Non-decreasing in alpha with V(0) = 0 and V(1) = 1 exactly (unit
 * variance). Out-of-range conventions follow the bound formulas: alpha < 0
 * maps to 0 and alpha > 1 to +infinity. Continuous models integrate by
 * adaptive quadrature at the model's tolerance; the empirical model uses
 * partial sums of sorted squared samples with k = round(alpha * N).
 */
double tail_weight(const TailModel& model, double alpha);

/**
 * @brief Query for the asymptotic expressed-variance lower bound.
 *
 * lambda_star is the asymptotic contamination fraction (in [0, 0.5));
 * t_hat_ratio is the trim level relative to the authentic count, in (0, 1],
 * and must exceed lambda_star / (1 - lambda_star) for the bound to be
 * positive. kappa_grid is the search grid of the scalar maximization; the
 * default is 2000 log-spaced points spanning [1e-4, 1e4], refined around the
 * grid argmax by golden-section search.
 */
struct BoundQuery {
  double lambda_star = 0.0;
  double t_hat_ratio = 1.0;
  std::vector<double> kappa_grid = default_kappa_grid();

  static std::vector<double> default_kappa_grid(int points = 2000);
};

/**
 * @brief Asymptotic lower bound on the expressed variance of the removal
 *        loop's output:
 *
 *   max over kappa > 0 of
 *     V( 1 - lambda*(1+kappa) / ((1-lambda*) kappa) ) / (1 + kappa)
 *   * V( t_hat_ratio - lambda* / (1-lambda*) ) / V( t_hat_ratio ).
 *
 * Tends to 1 as lambda* -> 0 and stays positive up to the 0.5 breakdown
 * point whenever the trim window clears the contamination (the V(neg) = 0
 * convention makes the bound 0, not an error, when it does not). Throws if
 * lambda_star is outside [0, 0.5), t_hat_ratio outside (0, 1], or the trim
 * level carries no tail weight at all.
 */
double asymptotic_bound(const TailModel& model, const BoundQuery& query);

/// "gaussian" / "uniform" / "empirical".
std::string tail_kind_name(TailModel::Kind kind);
/// Inverse of tail_kind_name; throws on unknown names.
TailModel::Kind parse_tail_kind(const std::string& name);

struct BoundPoint {
  double lambda;
  double bound;
};

/// asymptotic_bound evaluated over a grid of contamination levels at a fixed
/// trim ratio.
std::vector<BoundPoint> bound_curve(const TailModel& model,
                                    std::span<const double> lambdas,
                                    double t_hat_ratio);

}  // namespace hrpca
