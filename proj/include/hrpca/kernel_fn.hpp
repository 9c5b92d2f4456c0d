/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/kernel_fn.hpp
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

#include <functional>
#include <string>
#include <utility>

namespace hrpca {

enum class KernelKind { linear, rbf, polynomial, custom };

/**
 * @brief A symmetric kernel function k(a, b), assumed positive semidefinite.
 *
 * Built through the named factories; custom() accepts any callable (the Gram
 * eigendecomposition later rejects kernels that turn out not to be PSD).
 */
class KernelFn {
public:
  using EvalFn = std::function<double(const Vec&, const Vec&)>;

  /// Default kernel is the linear kernel a.b.
  KernelFn() { *this = linear(); }

  static KernelFn linear();
  /// exp(-gamma * |a - b|^2); gamma must be positive.
  static KernelFn rbf(double gamma);
  /// (a.b + offset)^degree; degree must be a positive integer.
  static KernelFn polynomial(int degree, double offset);
  static KernelFn custom(std::string name, EvalFn eval);

  double operator()(const Vec& a, const Vec& b) const { return eval_(a, b); }
  KernelKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

private:
  KernelFn(KernelKind kind, std::string name, EvalFn eval)
      : kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {}

  KernelKind kind_ = KernelKind::linear;
  std::string name_;
  EvalFn eval_;
};

}  // namespace hrpca
