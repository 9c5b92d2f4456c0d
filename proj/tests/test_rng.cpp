/*
 * hrpca - robust principal component analysis for contaminated
 * high-dimensional data.
 *
 * File: tests/test_rng.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hrpca/rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

using namespace hrpca;

TEST_CASE("splitmix64 matches the published reference outputs for seed 0") {
  // First three outputs of the reference implementation seeded with 0.
  std::uint64_t state = 0;
  CHECK(splitmix64_next(state) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64_next(state) == 0x6E789E6AA1B965F4ull);
  CHECK(splitmix64_next(state) == 0x06C45D188009454Full);
}

TEST_CASE("mix_seed is a pure function of its three arguments") {
  const std::uint64_t a = mix_seed(42, 7, 3);
  CHECK(a == mix_seed(42, 7, 3));
  CHECK(a != mix_seed(42, 7, 4));
  CHECK(a != mix_seed(42, 8, 3));
  CHECK(a != mix_seed(43, 7, 3));
  // Swapping the stream coordinates must not collide (order matters).
  CHECK(mix_seed(42, 7, 3) != mix_seed(42, 3, 7));
}

TEST_CASE("mix_seed decorrelates neighbouring stream coordinates") {
  // Enumerating a small grid of (a, b) pairs under one base seed must not
  // produce duplicate seeds; collisions would couple sweep trials.
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 40; ++a)
    for (std::uint64_t b = 0; b < 40; ++b) seen.insert(mix_seed(123, a, b));
  CHECK(seen.size() == 1600);
}

TEST_CASE("engine streams are reproducible and seed-sensitive") {
  RandomEngine e1(99), e2(99), e3(100);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t a = e1.next_u64();
    all_equal = all_equal && (a == e2.next_u64());
    any_diff = any_diff || (a != e3.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("next_index stays in range and rejects a zero bound") {
  RandomEngine e(5);
  for (int i = 0; i < 1000; ++i) CHECK(e.next_index(7) < 7);
  CHECK_THROWS_AS(e.next_index(0), std::invalid_argument);
}

TEST_CASE("uniform01 lies in [0,1) and is roughly centered") {
  RandomEngine e(11);
  double sum = 0.0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    const double u = e.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / reps == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform(lo,hi) respects its bounds and validates them") {
  RandomEngine e(12);
  for (int i = 0; i < 1000; ++i) {
    const double u = e.uniform(-3.0, 2.0);
    CHECK(u >= -3.0);
    CHECK(u < 2.0);
  }
  CHECK_THROWS_AS(e.uniform(2.0, -3.0), std::invalid_argument);
}

TEST_CASE("normal consumes exactly two 64-bit draws") {
  // Trace compatibility depends on this draw count: advance a twin engine by
  // two raw draws and check the streams stay aligned afterwards.
  RandomEngine a(77), b(77);
  (void)a.normal();
  (void)b.next_u64();
  (void)b.next_u64();
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("normal has approximately standard moments") {
  RandomEngine e(13);
  const int reps = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double x = e.normal();
    REQUIRE(std::isfinite(x));
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / reps;
  const double var = sumsq / reps - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("normal_vector and unit_sphere_vector have the right shapes") {
  RandomEngine e(21);
  const Vec v = e.normal_vector(9);
  CHECK(v.size() == 9);
  const Vec u = e.unit_sphere_vector(6);
  CHECK(u.size() == 6);
  CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted_pick selects the smallest index whose cumulative weight "
          "exceeds the scaled uniform") {
  const std::array<double, 3> w{3.0, 1.0, 0.0};
  // total = 4; boundaries at r = 3 (index 0 -> 1).
  CHECK(weighted_pick(w, 0.0) == 0);
  CHECK(weighted_pick(w, 0.74) == 0);   // r = 2.96 < 3
  CHECK(weighted_pick(w, 0.75) == 1);   // r = 3.0 is NOT < 3: strict boundary
  CHECK(weighted_pick(w, 0.999) == 1);  // r = 3.996 < 4
}

TEST_CASE("weighted_pick never lands on a zero-weight entry") {
  const std::array<double, 3> w{3.0, 1.0, 0.0};
  RandomEngine e(2024);
  for (int i = 0; i < 20000; ++i) CHECK(weighted_pick(w, e.uniform01()) != 2);
  // A zero-weight head is skipped even at u = 0.
  const std::array<double, 2> head{0.0, 5.0};
  CHECK(weighted_pick(head, 0.0) == 1);
}

TEST_CASE("weighted_pick empirical frequencies follow the weights") {
  const std::array<double, 3> w{3.0, 1.0, 0.0};
  RandomEngine e(555);
  std::array<int, 3> hits{0, 0, 0};
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) ++hits[weighted_pick(w, e.uniform01())];
  CHECK(std::abs(static_cast<double>(hits[0]) / reps - 0.75) <= 0.01);
  CHECK(std::abs(static_cast<double>(hits[1]) / reps - 0.25) <= 0.01);
  CHECK(hits[2] == 0);
}

TEST_CASE("weighted_pick rejects malformed inputs") {
  const std::array<double, 2> ok{1.0, 1.0};
  CHECK_THROWS_AS(weighted_pick({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(weighted_pick(ok, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(weighted_pick(ok, -0.1), std::invalid_argument);
  const std::array<double, 2> neg{1.0, -0.5};
  CHECK_THROWS_AS(weighted_pick(neg, 0.5), std::invalid_argument);
  const std::array<double, 2> zeros{0.0, 0.0};
  CHECK_THROWS_AS(weighted_pick(zeros, 0.5), std::invalid_argument);
  const std::array<double, 2> inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(weighted_pick(inf, 0.5), std::invalid_argument);
}
