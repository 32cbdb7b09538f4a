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


#pragma once

#include <cstdint>

#include "qproto/noise.hpp"
#include "qproto/rng.hpp"
#include "qproto/stats.hpp"

// Private-key quantum money with classical verification. Each banknote pair
// holds one qubit in the Z basis and one in the X basis, in either order.
namespace qproto::money {

enum class VerifyBasis { Z, X };

struct BanknoteConfig {
  std::uint64_t n_pairs = 10000;
  double wait_time = 0.0;  // seconds
  noise::HardwareProfile profile{};

  void validate() const;
};

struct VerificationTally {
  std::uint64_t n_valid = 0;
  std::uint64_t n_detected = 0;
  VerifyBasis chosen_basis = VerifyBasis::Z;
};

VerificationTally run_banknote_trial(const BanknoteConfig& cfg, Rng& rng);

/// Pooled c over `repetitions` blocks of `block_size` one-pair banknotes,
/// Wilson 95%. Repetition r draws from its own derived stream, so the result
/// is the same for every thread count.
stats::IntervalEstimate estimate_c(const BanknoteConfig& cfg, std::uint64_t block_size,
                                   int repetitions, std::uint64_t seed, unsigned threads = 1);

/// Expected c when T1 >> T: 1 - m - q(T)(1 - 2m)/2 with m = (p1 + p2)/2 and
/// q(T) = (1 - e^{-T/T2})/2.
double analytic_c(double wait_time, const noise::HardwareProfile& profile);

/// 2c/3 - 7/12.
double delta(double c);
/// 1 - exp(-c n delta^2 / 2). Zero at c = 0.875; throws InsecureRegime below.
double p_correct_bound(double c, std::uint64_t n);
/// exp(-n delta^2 / 4). One at c = 0.875; throws InsecureRegime below.
double p_forge_bound(double c, std::uint64_t n);
/// Smallest n with p_forge_bound(c, n) <= target. Needs c > 0.875.
std::uint64_t min_pairs_for_forge(double c, double target);

}  // namespace qproto::money
