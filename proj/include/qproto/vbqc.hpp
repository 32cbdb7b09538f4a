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
#include <utility>

#include "qproto/noise.hpp"
#include "qproto/rng.hpp"
#include "qproto/stats.hpp"

// Verifiable blind quantum computation with a three-qubit server. Server
// qubits are labelled 1, 3, 5 and their client partners 2, 4, 6. Angles are
// integers in units of pi/8, reduced mod 16.
namespace qproto::vbqc {

struct GateDurations {
  double single_qubit = 5e-9;
  double cnot = 20e-6;
  double cz = 20e-6;
  double measurement = 3.7e-6;
};

struct VbqcProfile {
  double gate_depolarizing_q = 0.0;
  noise::MeasurementFlip flips{};
  GateDurations durations{};
  /// Memory decoherence between operations; off unless set.
  std::optional<noise::HardwareProfile> memory;

  void validate() const;
};

struct VbqcParams {
  int d = 6;
  int t = 5;
  int w = 1;
  int k = 2;
  int x = 0;
  std::array<int, 3> phis{0, 0, 0};  // each in 0..7

  void validate() const;
};

/// Reduces an angle in pi/8 units to 0..15.
int wrap_angle(int units);
double angle_radians(int units);

/// True when the client accepts the test round.
bool run_test_round(const VbqcProfile& profile, Rng& rng);

struct ComputationTranscript {
  std::array<int, 3> theta{};
  std::array<int, 3> r{};
  std::array<int, 3> g{};
  std::array<int, 3> delta{};
  std::array<int, 3> b{};
  int output = 0;  // b3 xor r3
};

ComputationTranscript run_computation_transcript(const VbqcProfile& profile, const VbqcParams& params,
                                                 Rng& rng);
int run_computation_round(const VbqcProfile& profile, const VbqcParams& params, Rng& rng);

/// Wilson interval on the test-round failure probability. Trial i draws from
/// make_rng(seed, ., i), so the estimate does not depend on `threads`.
stats::IntervalEstimate estimate_test_failure(const VbqcProfile& profile, std::uint64_t trials,
                                              double confidence, std::uint64_t seed, unsigned threads = 1);

/// The open interval (p_max, 1/(2k)) of admissible w/t, or nothing.
std::optional<std::pair<double, double>> wt_feasible_range(double p_max, int k);

struct ProtocolOutcome {
  bool aborted = false;
  int output = 0;
  int failed_tests = 0;
};

/// t test and d computation rounds in a uniformly random order; aborts when
/// more than w tests fail, otherwise returns the majority of the outputs
/// (ties broken by a fair coin).
ProtocolOutcome run_protocol(const VbqcProfile& profile, const VbqcParams& params, Rng& rng);

}  // namespace qproto::vbqc
