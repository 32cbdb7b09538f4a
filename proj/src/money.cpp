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


#include "qproto/money.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qproto/errors.hpp"
#include "qproto/parallel.hpp"

namespace qproto::money {
namespace {

constexpr double kThreshold = 0.875;

// P(outcome 1) for each prepared single-qubit state after storage, indexed by
// [encoding basis][bit][measurement basis]. Pairs are product states and all
// operations act locally, so one-qubit states are exact.
using OutcomeTable = std::array<std::array<std::array<double, 2>, 2>, 2>;

OutcomeTable stored_outcome_table(const BanknoteConfig& cfg) {
  OutcomeTable table{};
  const auto& hw = cfg.profile;
  for (int enc = 0; enc < 2; ++enc) {
    for (int bit = 0; bit < 2; ++bit) {
      qsim::Vector ket(2);
      if (enc == 0) {
        ket << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
      } else {
        const double s = 1.0 / std::sqrt(2.0);
        ket << s, (bit == 0 ? s : -s);
      }
      auto state = noise::apply_t1t2(qsim::pure_state(ket, {0}), 0, cfg.wait_time, hw.t1, hw.t2);
      table[enc][bit][0] = qsim::outcome_probability(state, 0, qsim::Basis::z(), 1);
      table[enc][bit][1] = qsim::outcome_probability(state, 0, qsim::Basis::x(), 1);
    }
  }
  return table;
}

VerificationTally banknote_trial(const BanknoteConfig& cfg, const OutcomeTable& table, Rng& rng) {
  const auto& flips = cfg.profile.flips;
  // The bank prepares all pairs before the verifier announces the basis.
  std::vector<std::uint8_t> pairs(cfg.n_pairs);
  for (auto& p : pairs) p = static_cast<std::uint8_t>(uniform_index(rng, 8));

  VerificationTally tally;
  const int chosen = random_bit(rng);
  tally.chosen_basis = chosen == 0 ? VerifyBasis::Z : VerifyBasis::X;
  for (const std::uint8_t p : pairs) {
    // p in 0..3: |z x>, p in 4..7: |x z>; bit 1 of p is the Z-encoded bit,
    // bit 0 the X-encoded bit.
    const int z_bit = (p >> 1) & 1;
    const int x_bit = p & 1;
    for (int enc = 0; enc < 2; ++enc) {
      const int bit = enc == 0 ? z_bit : x_bit;
      int outcome = bernoulli(rng, table[enc][bit][chosen]) ? 1 : 0;
      outcome = noise::flip_outcome(outcome, flips, rng);
      if (enc == chosen) {
        ++tally.n_detected;
        if (outcome == bit) ++tally.n_valid;
      }
    }
  }
  return tally;
}

void check_c(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in [0, 1]");
  if (c < kThreshold) {
    throw InsecureRegime("c = " + std::to_string(c) + " is below 0.875; no security guarantee");
  }
}

}  // namespace

void BanknoteConfig::validate() const {
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be at least 1");
  if (!(wait_time >= 0.0)) throw std::invalid_argument("wait_time must be non-negative");
  const auto& f = profile.flips;
  if (!(f.p1 >= 0.0 && f.p1 <= 1.0 && f.p2 >= 0.0 && f.p2 <= 1.0)) {
    throw std::invalid_argument("flip probabilities must lie in [0, 1]");
  }
}

VerificationTally run_banknote_trial(const BanknoteConfig& cfg, Rng& rng) {
  cfg.validate();
  return banknote_trial(cfg, stored_outcome_table(cfg), rng);
}

stats::IntervalEstimate estimate_c(const BanknoteConfig& cfg, std::uint64_t block_size,
                                   int repetitions, std::uint64_t seed, unsigned threads) {
  if (block_size < 1) throw std::invalid_argument("block_size must be at least 1");
  if (repetitions < 2) throw std::invalid_argument("estimate_c needs at least two repetitions");
  cfg.validate();
  // c is the success probability of the one-pair mini-scheme, so each pair
  // of a block is verified on its own with a fresh basis choice.
  BanknoteConfig single = cfg;
  single.n_pairs = 1;
  const OutcomeTable table = stored_outcome_table(cfg);
  std::vector<VerificationTally> tallies(static_cast<std::size_t>(repetitions));
  parallel_for(tallies.size(), threads, [&](std::size_t r) {
    Rng rng = make_rng(seed, 0x6d6f6e6579ULL, r);
    VerificationTally sum;
    for (std::uint64_t i = 0; i < block_size; ++i) {
      const auto t = banknote_trial(single, table, rng);
      sum.n_valid += t.n_valid;
      sum.n_detected += t.n_detected;
    }
    tallies[r] = sum;
  });
  std::uint64_t valid = 0;
  std::uint64_t detected = 0;
  for (const auto& t : tallies) {
    valid += t.n_valid;
    detected += t.n_detected;
  }
  return stats::wilson_interval(valid, detected, 0.95);
}

double analytic_c(double wait_time, const noise::HardwareProfile& profile) {
  const double m = 0.5 * (profile.flips.p1 + profile.flips.p2);
  const double q = noise::dephasing_probability(wait_time, profile.t2);
  // Only the X-encoded half of the counted qubits is sensitive to dephasing.
  return 1.0 - m - 0.5 * q * (1.0 - 2.0 * m);
}

double delta(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in [0, 1]");
  return 2.0 * c / 3.0 - 7.0 / 12.0;
}

double p_correct_bound(double c, std::uint64_t n) {
  check_c(c);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double d = delta(c);
  return -std::expm1(-c * static_cast<double>(n) * d * d / 2.0);
}

double p_forge_bound(double c, std::uint64_t n) {
  check_c(c);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double d = delta(c);
  return std::exp(-static_cast<double>(n) * d * d / 4.0);
}

std::uint64_t min_pairs_for_forge(double c, double target) {
  check_c(c);
  if (c == kThreshold) throw InsecureRegime("c = 0.875 gives no forging bound");
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target must lie in (0, 1)");
  const double d = delta(c);
  return static_cast<std::uint64_t>(std::ceil(4.0 * std::log(1.0 / target) / (d * d)));
}

}  // namespace qproto::money
