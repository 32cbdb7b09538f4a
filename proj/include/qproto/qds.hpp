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
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qproto/noise.hpp"
#include "qproto/rng.hpp"

// Three-party quantum digital signatures (Alice signs, Bob receives and
// forwards to Charlie) over single-photon BB84-style key generation.
namespace qproto::qds {

using Bits = std::vector<std::uint8_t>;

struct QdsConfig {
  std::uint64_t n_photons = 50000;
  double p_x = 0.5;
  double r = 0.1;
  double epsilon = 1e-10;
  double epsilon_pe = 1e-5;
  double a = 1e-5;
  noise::LossModel loss{0.5, 5.0, 0.2};
  double e_d = 0.0;

  void validate() const;
};

/// Matched-basis strings of one KGP; index i of the Alice and recipient
/// strings refer to the same photon.
struct KgpResult {
  Bits x_alice;
  Bits x_recipient;
  Bits z_alice;
  Bits z_recipient;
  std::uint64_t sent = 0;
  std::uint64_t detected = 0;
};

/// The recipient sends n_photons BB84 states to Alice; Alice measures them.
KgpResult run_kgp(const QdsConfig& cfg, Rng& rng);

/// Index partition of an X-sifted string of length n: a sample of
/// floor(r n) positions, one dropped position when the rest is odd, and two
/// equal halves.
struct SiftedSplit {
  std::vector<std::size_t> sample;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> forward;
  std::vector<std::size_t> dropped;
};

/// Throws DegenerateInput when n < 10 or nothing would be left to split.
SiftedSplit split_sifted(std::size_t n, double r, Rng& rng);

/// Strings for one message value. Each recipient bit string is aligned with
/// Alice's string of the same name, e.g. bob_keep[i] vs alice_bob_keep[i].
struct MessageStrings {
  Bits bob_keep, alice_bob_keep;
  Bits bob_forward, alice_bob_forward;  // now held by Charlie
  Bits charlie_keep, alice_charlie_keep;
  Bits charlie_forward, alice_charlie_forward;  // now held by Bob

  /// |R^B| = |bob_keep| + |charlie_forward|.
  std::size_t l() const { return bob_keep.size() + charlie_forward.size(); }
};

struct SignatureStrings {
  std::array<MessageStrings, 2> message;
};

struct RecipientEstimate {
  double e_x_obs = 0.0;
  std::uint64_t k_sample = 0;
  std::uint64_t n_remaining = 0;
  double e_z_obs = 0.0;
  std::uint64_t n_z = 0;
};

struct DistributionResult {
  SignatureStrings strings;
  std::array<std::array<RecipientEstimate, 2>, 2> estimates;  // [m][0 = Bob, 1 = Charlie]
};

/// Four KGPs (Bob and Charlie, m = 0 and 1), each on its own stream derived
/// from `seed`, followed by sampling and symmetrization.
DistributionResult distribution_stage(const QdsConfig& cfg, std::uint64_t seed, unsigned threads = 1);

struct ErrorBounds {
  double e_u_x = 0.0;
  double phi_u_x = 0.0;
};

ErrorBounds bound_errors(double e_obs, std::uint64_t n_remaining, std::uint64_t k_sample,
                         std::uint64_t n_z_sample, double e_z_obs, double epsilon_pe);

struct Thresholds {
  double p_e = 0.0;
  double s_a = 0.0;
  double s_v = 0.0;
};

/// h(P_E) = 1 - h(phi); s_a = (P_E + 2 e)/3; s_v = (2 P_E + e)/3.
Thresholds compute_thresholds(double phi_u_x, double e_u_x);

struct QdsSecurityReport {
  double p_abort = 0.0;
  double p_rep = 0.0;
  double p_for = 0.0;
  double s_a = 0.0;
  double s_v = 0.0;
  double p_e = 0.0;
  double e_u_x = 0.0;
  double phi_u_x = 0.0;
  std::size_t l = 0;
};

QdsSecurityReport security_levels(std::size_t l, const Thresholds& th, double e_u_x, double phi_u_x,
                                  const QdsConfig& cfg);

struct Verdict {
  bool bob_accepts = false;
  bool charlie_accepts = false;
};

/// Each recipient accepts when both halves of his string have fewer than
/// s l mismatches with Alice's signature (s = s_a for Bob, s_v for Charlie).
Verdict messaging_stage(const SignatureStrings& strings, const Thresholds& th, int m);

/// Full pipeline for message m = 0.
QdsSecurityReport evaluate(const QdsConfig& cfg, std::uint64_t seed, unsigned threads = 1);

}  // namespace qproto::qds
