// Copyright 2026 The qproto-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <gtest/gtest.h>

#include "qproto/stats.hpp"

namespace qproto::stats {
namespace {

constexpr double kZ95 = 1.959963984540054;

TEST(Stats, WilsonBoundaries) {
  EXPECT_EQ(wilson_interval(0, 100).lower, 0.0);
  EXPECT_EQ(wilson_interval(100, 100).upper, 1.0);
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(5, 4), std::invalid_argument);
}

TEST(Stats, WilsonClosedForm) {
  const auto ci = wilson_interval(50, 100);
  EXPECT_NEAR(ci.lower, 0.404, 1e-3);
  EXPECT_NEAR(ci.upper, 0.596, 1e-3);
  // Direct evaluation of the score interval.
  const double n = 3000, p = 0.1, z = kZ95;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  const auto ci2 = wilson_interval(300, 3000);
  EXPECT_NEAR(ci2.lower, centre - half, 1e-12);
  EXPECT_NEAR(ci2.upper, centre + half, 1e-12);
  EXPECT_NEAR(ci2.lower, 0.0898, 1e-4);
  EXPECT_NEAR(ci2.upper, 0.1113, 1e-4);
  EXPECT_EQ(ci2.n_trials, 3000u);
}

TEST(Stats, NormalQuantile) {
  EXPECT_NEAR(normal_z(0.95), kZ95, 1e-12);
  EXPECT_NEAR(normal_z(0.9995), 3.480756404, 1e-8);
  EXPECT_THROW(normal_z(1.0), std::invalid_argument);
}

TEST(Stats, HigherConfidenceWidens) {
  const auto a = wilson_interval(120, 3000, 0.95);
  const auto b = wilson_interval(120, 3000, 0.9995);
  EXPECT_LT(b.lower, a.lower);
  EXPECT_GT(b.upper, a.upper);
}

TEST(Stats, BinaryEntropy) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.4999159582, 1e-9);
  EXPECT_THROW(binary_entropy(1.5), std::invalid_argument);
}

TEST(Stats, EntropyInverse) {
  EXPECT_EQ(entropy_inverse(1.0), 0.5);
  EXPECT_EQ(entropy_inverse(0.0), 0.0);
  const double x = entropy_inverse(0.5);
  EXPECT_NEAR(x, 0.110028, 1e-6);
  EXPECT_NEAR(binary_entropy(x), 0.5, 1e-10);
}

TEST(Stats, SerflingMu) {
  EXPECT_NEAR(serfling_mu(4000, 400, 1.0 - 1e-15), 0.0, 1e-6);
  const double expected = std::sqrt(4400.0 * 401.0 * std::log(1e5) / (2.0 * 4000.0 * 160000.0));
  EXPECT_NEAR(serfling_mu(4000, 400, 1e-5), expected, 1e-15);
  EXPECT_NEAR(serfling_mu(4000, 400, 1e-5), 0.1259, 1e-4);
  EXPECT_LT(serfling_mu(4000, 800, 1e-5), serfling_mu(4000, 400, 1e-5));
  EXPECT_THROW(serfling_mu(0, 10, 0.1), std::invalid_argument);
}

TEST(Stats, RiemannSphereAverage) {
  EXPECT_NEAR(riemann_sphere_average([](const qsim::BlochAngles&) { return 1.0; }), 1.0, 1e-3);
  EXPECT_NEAR(riemann_sphere_average([](const qsim::BlochAngles& a) { return std::pow(std::cos(a.theta / 2), 2); }),
              0.5, 1e-3);
  EXPECT_EQ(riemann_sphere_average([](const qsim::BlochAngles&) { return 0.0; }), 0.0);
}

TEST(StatsProperty, EntropyInverseRoundTrip) {
  for (int i = 0; i <= 500; ++i) {
    const double x = 0.5 * i / 500.0;
    EXPECT_NEAR(entropy_inverse(binary_entropy(x)), x, 1e-9) << "x = " << x;
  }
}

TEST(StatsProperty, WilsonWidthScalesAsInverseSqrt) {
  const double w2 = wilson_interval(30, 100).width();
  const double w4 = wilson_interval(3000, 10000).width();
  EXPECT_NEAR(w2 / w4, 10.0, 0.5);
}

TEST(StatsProperty, FirstOrderHarmonicsAverageToZero) {
  using A = qsim::BlochAngles;
  EXPECT_NEAR(riemann_sphere_average([](const A& a) { return std::cos(a.theta); }), 0.0, 1e-3);
  EXPECT_NEAR(riemann_sphere_average([](const A& a) { return std::sin(a.theta) * std::cos(a.phi); }), 0.0, 1e-3);
  EXPECT_NEAR(riemann_sphere_average([](const A& a) { return std::sin(a.theta) * std::sin(a.phi); }), 0.0, 1e-3);
}

}  // namespace
}  // namespace qproto::stats
