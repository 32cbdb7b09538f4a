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

#include <array>
#include <cstdint>
#include <optional>

#include "qproto/noise.hpp"
#include "qproto/qsim.hpp"
#include "qproto/rng.hpp"
#include "qproto/stats.hpp"

// Anonymous transmission over a W state. The sender S holds label 0 and the
// receiver R label 1; the other N - 2 parties hold labels 2..N-1.
namespace qproto::anon {

inline constexpr qsim::Label kSender = 0;
inline constexpr qsim::Label kReceiver = 1;

struct AnonConfig {
  int n_parties = 4;
  double q1 = 0.0;  // dephasing on S and R up to the veto
  double q2 = 0.0;  // total dephasing on R up to the logical OR
  std::optional<noise::NoiseChannel> gate_noise;  // after each correction gate
  double epsilon_corr = 0.0;

  void validate() const;
};

struct LossConfig {
  int n_parties = 4;
  double eta_d = 0.8;
  double eta_tr = 1.0;
  double eta_bsm = 0.8;
  double eta0 = 0.8;
  double sender_ratio = 0.002;
  double receiver_ratio = 0.004;

  void validate() const;
  double eta_node() const;  // eta_d * eta_tr, for each measuring party
  double eta_sender() const;
  double eta_receiver() const;
};

/// Measures the N - 2 non-participants of w_state(N) in Z. Returns the S,R
/// pair when every outcome is 0, std::nullopt otherwise.
std::optional<qsim::DensityState> establish_anonymous_entanglement(const AnonConfig& cfg, Rng& rng);

/// The S,R pair after a successful veto, computed by exact collapse.
qsim::DensityState post_selected_pair(int n_parties);

/// Sampled teleportation of `input` through an established pair. Returns R's
/// corrected qubit.
qsim::DensityState teleport(const AnonConfig& cfg, const qsim::DensityState& pair,
                            const qsim::BlochAngles& input, Rng& rng);

/// R's output averaged over the four BSM outcomes with their Born weights.
qsim::DensityState teleport_exact(const AnonConfig& cfg, const qsim::DensityState& pair,
                                  const qsim::DensityState& input);

/// Exact outcome-averaged teleportation channel, stored as its action on the
/// Pauli basis so that arbitrary inputs are cheap to evaluate.
class TeleportChannel {
 public:
  explicit TeleportChannel(const AnonConfig& cfg);
  qsim::DensityState output(const qsim::BlochAngles& input) const;
  double fidelity(const qsim::BlochAngles& input) const;

 private:
  std::array<qsim::Matrix2, 4> pauli_images_;  // E(I), E(X), E(Y), E(Z)
};

/// Riemann-grid average of the exact teleportation fidelity. Deterministic.
double average_fidelity(const AnonConfig& cfg);

/// 1 - 2 q1 (1 - q1).
double f_gamma(double q1);

/// Dephasing that composes with q1 to give q2: (q2 - q1) / (1 - 2 q1).
double extra_dephasing(double q1, double q2);

/// Closed-form failure probability with the W-state post-selection
/// probabilities 2/N (nobody lost) and 3/N (one measuring party lost).
double p_fail(const LossConfig& cfg);

/// Brute-force failure estimate: Bernoulli losses per party, post-selection
/// probabilities taken from the simulated post-loss state.
stats::IntervalEstimate p_fail_monte_carlo(const LossConfig& cfg, std::uint64_t trials,
                                           std::uint64_t seed, unsigned threads = 1);

/// 1 - epsilon.
double p_correct_anon(double epsilon_corr);

}  // namespace qproto::anon
