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

#include "qproto/errors.hpp"
#include "qproto/money.hpp"
#include "qproto/stats.hpp"

namespace qproto::money {
namespace {

// Independent closed form: Z-basis verification only sees readout flips,
// X-basis verification also sees storage dephasing q(T).
double oracle_c(double t, double t2, double p1, double p2) {
  const double m = (p1 + p2) / 2.0;
  const double q = 0.5 * (1.0 - std::exp(-t / t2));
  return 1.0 - 0.5 * (m + (q * (1.0 - 2.0 * m) + m));
}

// 99.9% interval from the same counts, to keep a five-point sweep from
// failing by chance.
stats::IntervalEstimate wide(const stats::IntervalEstimate& c) {
  const auto successes = static_cast<std::uint64_t>(std::llround(c.mean * static_cast<double>(c.n_trials)));
  return stats::wilson_interval(successes, c.n_trials, 0.999);
}

BanknoteConfig default_hardware(double wait) {
  BanknoteConfig cfg;
  cfg.wait_time = wait;
  cfg.profile = {36000.0, 1.0, {0.05, 0.005}};
  return cfg;
}

TEST(Money, NoiselessTrialIsPerfect) {
  BanknoteConfig cfg;
  cfg.n_pairs = 500;
  cfg.profile = {36000.0, 1.0, {0.0, 0.0}};
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto t = run_banknote_trial(cfg, rng);
    EXPECT_EQ(t.n_detected, 500u);
    EXPECT_EQ(t.n_valid, t.n_detected);
  }
}

TEST(Money, FlipsOnlyAtZeroWait) {
  const auto c = estimate_c(default_hardware(0.0), 20000, 5, 7);
  const double sigma = std::sqrt(0.9725 * 0.0275 / 1e5);
  EXPECT_NEAR(c.mean, 0.9725, 4 * sigma);
}

TEST(Money, AgreesWithOracleAtPointThree) {
  const double expected = oracle_c(0.3, 1.0, 0.05, 0.005);
  EXPECT_NEAR(expected, 0.911, 1e-3);
  const auto c = estimate_c(default_hardware(0.3), 10000, 10, 99);
  EXPECT_TRUE(wide(c).contains(expected)) << c.lower << " " << c.upper;
}

TEST(Money, AnalyticCMatchesOracle) {
  for (double t : {0.0, 0.1, 0.5, 2.0}) {
    EXPECT_NEAR(analytic_c(t, {36000.0, 1.0, {0.05, 0.005}}), oracle_c(t, 1.0, 0.05, 0.005), 1e-15);
  }
}

TEST(Money, NoiselessEstimateIsTight) {
  BanknoteConfig cfg;
  cfg.profile = {36000.0, 1.0, {0.0, 0.0}};
  const auto c = estimate_c(cfg, 10000, 10, 3);
  EXPECT_EQ(c.mean, 1.0);
  EXPECT_GT(c.lower, 0.999);
}

TEST(Money, ShortWaitStaysNearFlipFloor) {
  const auto c = estimate_c(default_hardware(0.01), 10000, 10, 5);
  EXPECT_TRUE(wide(c).contains(oracle_c(0.01, 1.0, 0.05, 0.005)));
  EXPECT_NEAR(oracle_c(0.01, 1.0, 0.05, 0.005), 0.9701, 1e-4);
}

TEST(Money, EstimateNeedsTwoRepetitions) {
  EXPECT_THROW(estimate_c(default_hardware(0.0), 100, 1, 1), std::invalid_argument);
  EXPECT_THROW(estimate_c(default_hardware(0.0), 0, 3, 1), std::invalid_argument);
}

TEST(Money, Delta) {
  EXPECT_EQ(delta(0.875), 0.0);
  EXPECT_NEAR(delta(1.0), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(delta(0.95), 0.05, 1e-12);
}

TEST(Money, CorrectBound) {
  EXPECT_EQ(p_correct_bound(0.875, 100), 0.0);
  EXPECT_NEAR(p_correct_bound(1.0, 100), 1.0 - std::exp(-100.0 / 288.0), 1e-14);
  EXPECT_NEAR(p_correct_bound(0.95, 2000), 1.0 - std::exp(-0.95 * 2000 * 0.0025 / 2.0), 1e-12);
  EXPECT_THROW(p_correct_bound(0.9, 0), std::invalid_argument);
  EXPECT_THROW(p_correct_bound(0.8, 10), InsecureRegime);
}

TEST(Money, ForgeBound) {
  EXPECT_EQ(p_forge_bound(0.875, 1000), 1.0);
  const double d = std::sqrt(4.0 * std::log(1e7) / 2.3e4);
  const double c = (d + 7.0 / 12.0) * 1.5;
  EXPECT_NEAR(c, 0.954, 1e-3);
  EXPECT_NEAR(p_forge_bound(c, 23000), 1e-7, 1e-12);
  EXPECT_NEAR(std::log(p_forge_bound(0.93, 2000)), 2.0 * std::log(p_forge_bound(0.93, 1000)), 1e-12);
  EXPECT_THROW(p_forge_bound(0.5, 10), InsecureRegime);
}

TEST(Money, MinPairs) {
  const double d = 0.0529;
  const double c = (d + 7.0 / 12.0) * 1.5;
  EXPECT_NEAR(static_cast<double>(min_pairs_for_forge(c, 1e-7)), 2.3e4, 0.01 * 2.3e4);
  const std::uint64_t n = 5000;
  const auto a = min_pairs_for_forge(c, p_forge_bound(c, n));
  const auto b = min_pairs_for_forge(c, std::exp(-1.0) * p_forge_bound(c, n));
  EXPECT_NEAR(static_cast<double>(b - a), 4.0 / (delta(c) * delta(c)), 1.0);
  EXPECT_THROW(min_pairs_for_forge(0.875, 1e-7), InsecureRegime);
  EXPECT_THROW(min_pairs_for_forge(0.95, 0.0), std::invalid_argument);
}

TEST(MoneyProperty, MinPairsInvertsForgeBound) {
  for (double c : {0.9, 0.93, 0.97, 1.0}) {
    for (double target : {1e-3, 1e-7, 1e-12}) {
      const auto n = min_pairs_for_forge(c, target);
      EXPECT_LE(p_forge_bound(c, n), target);
      if (n > 1) {
        EXPECT_GT(p_forge_bound(c, n - 1), target);
      }
    }
  }
}

TEST(MoneyProperty, OracleAgreementAcrossWaits) {
  std::uint64_t seed = 100;
  for (double t : {0.0, 0.05, 0.1, 0.3, 0.5}) {
    const auto c = estimate_c(default_hardware(t), 10000, 10, seed++);
    EXPECT_TRUE(wide(c).contains(oracle_c(t, 1.0, 0.05, 0.005))) << "T = " << t << " mean " << c.mean;
  }
}

TEST(MoneyProperty, CNonIncreasingInWait) {
  const auto a = estimate_c(default_hardware(0.0), 10000, 10, 1);
  const auto b = estimate_c(default_hardware(0.3), 10000, 10, 2);
  const auto c = estimate_c(default_hardware(0.7), 10000, 10, 3);
  EXPECT_GT(a.lower, b.upper);
  EXPECT_GT(b.lower, c.upper);
}

TEST(MoneyProperty, ForgeBoundDecreasesWithC) {
  double prev = p_forge_bound(0.875, 5000);
  for (int i = 1; i <= 25; ++i) {
    const double cur = p_forge_bound(0.875 + 0.005 * i, 5000);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(MoneyProperty, ThreadCountDoesNotChangeEstimate) {
  const auto a = estimate_c(default_hardware(0.2), 2000, 6, 77, 1);
  const auto b = estimate_c(default_hardware(0.2), 2000, 6, 77, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.lower, b.lower);
}

}  // namespace
}  // namespace qproto::money
