/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: include/hrpca/format.hpp
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

#include <string>

namespace hrpca {

/// Shortest decimal form of a double that parses back to the same bits
/// (std::to_chars); infinities print as inf/-inf, NaN as nan.
std::string format_double(double value);

/// Inverse of format_double (std::from_chars); throws on malformed input.
double parse_double(const std::string& text);

}  // namespace hrpca
