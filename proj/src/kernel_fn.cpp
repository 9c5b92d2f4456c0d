/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: src/kernel_fn.cpp
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

#include "hrpca/kernel_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace hrpca {

KernelFn KernelFn::linear() {
  return KernelFn(KernelKind::linear, "linear",
                  [](const Vec& a, const Vec& b) { return a.dot(b); });
}

KernelFn KernelFn::rbf(double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("rbf kernel: gamma must be positive");
  return KernelFn(KernelKind::rbf, "rbf", [gamma](const Vec& a, const Vec& b) {
    return std::exp(-gamma * (a - b).squaredNorm());
  });
}

KernelFn KernelFn::polynomial(int degree, double offset) {
  if (degree < 1)
    throw std::invalid_argument("polynomial kernel: degree must be >= 1");
  return KernelFn(KernelKind::polynomial, "polynomial",
                  [degree, offset](const Vec& a, const Vec& b) {
                    return std::pow(a.dot(b) + offset, degree);
                  });
}

KernelFn KernelFn::custom(std::string name, EvalFn eval) {
  if (!eval) throw std::invalid_argument("custom kernel: callable required");
  return KernelFn(KernelKind::custom, std::move(name), std::move(eval));
}

}  // namespace hrpca
