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

#include <map>
#include <vector>

#include "qproto/qsim.hpp"
#include "qproto/rng.hpp"

namespace qproto::noise {

using qsim::DensityState;
using qsim::Label;
using qsim::Matrix2;

enum class ChannelKind { T1T2, Dephasing, Depolarizing };

/// Single-qubit noise channel. T1T2 uses t1/t2 (seconds, t1 may be +inf);
/// the Pauli channels use q.
struct NoiseChannel {
  ChannelKind kind = ChannelKind::Dephasing;
  double t1 = 0.0;
  double t2 = 0.0;
  double q = 0.0;

  static NoiseChannel t1t2(double t1, double t2) { return {ChannelKind::T1T2, t1, t2, 0.0}; }
  static NoiseChannel dephasing(double q) { return {ChannelKind::Dephasing, 0.0, 0.0, q}; }
  static NoiseChannel depolarizing(double q) { return {ChannelKind::Depolarizing, 0.0, 0.0, q}; }

  /// Throws std::invalid_argument when parameters are out of range.
  void validate() const;
};

/// Readout error: p1 flips 0 -> 1, p2 flips 1 -> 0.
struct MeasurementFlip {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Memory and readout parameters shared by the protocol simulations.
struct HardwareProfile {
  double t1 = 36000.0;  // seconds
  double t2 = 1.0;      // seconds
  MeasurementFlip flips{};
};

struct LossModel {
  double eta_sys = 1.0;        // transmittance of everything except the fibre
  double fibre_length = 0.0;   // km
  double attenuation = 0.2;    // dB/km
  double eta_d = 1.0;          // detector
  double eta_bsm = 1.0;        // Bell-state measurement
  double eta0 = 1.0;           // memory prefactor
  double storage_ratio = 0.0;  // t_s / T1

  void validate() const;
};

// Kraus sets; each satisfies sum K^dagger K = I.
std::vector<Matrix2> t1t2_kraus(double dt, double t1, double t2);
std::vector<Matrix2> dephasing_kraus(double q);
std::vector<Matrix2> depolarizing_kraus(double q);

/// Amplitude damping with gamma = 1 - e^{-dt/T1} composed with pure dephasing
/// so that coherences decay exactly as e^{-dt/T2}. Requires T2 <= 2 T1.
DensityState apply_t1t2(DensityState state, Label q, double dt, double t1, double t2);
/// rho -> (1-q) rho + q Z rho Z. Diagonal elements are left bit-identical.
DensityState apply_dephasing(DensityState state, Label q, double prob);
/// rho -> (1-q) rho + (q/3)(X rho X + Y rho Y + Z rho Z).
DensityState apply_depolarizing(DensityState state, Label q, double prob);
/// Dispatches on the channel kind; dt is only used by T1T2.
DensityState apply_channel(DensityState state, Label q, const NoiseChannel& channel, double dt = 0.0);

// In-place variants for hot loops.
void apply_t1t2_in_place(DensityState& state, Label q, double dt, double t1, double t2);
void apply_dephasing_in_place(DensityState& state, Label q, double prob);
void apply_depolarizing_in_place(DensityState& state, Label q, double prob);

/// Dephasing probability equivalent to storage time t when T1 >> t.
double dephasing_probability(double t, double t2);
/// Probability of the composition of two dephasing channels: q + q' - 2qq'.
double compose_dephasing(double q, double q_prime);

int flip_outcome(int bit, const MeasurementFlip& flips, Rng& rng);

/// eta_sys * 10^{-attenuation * length / 10}.
double link_transmittance(const LossModel& m);
/// eta0 * e^{-ratio}.
double memory_transmittance(double eta0, double storage_ratio);
/// 10^{-db/10}.
double db_to_transmittance(double db);

/// Lazily applies T1T2 memory noise: each touch charges the time elapsed
/// since the qubit was last touched. Qubits start at time zero.
class DecoherenceLedger {
 public:
  DecoherenceLedger(double t1, double t2);

  DensityState touch(DensityState state, Label q, double now);
  void touch_in_place(DensityState& state, Label q, double now);
  /// Marks q as fresh at `now` without applying noise (e.g. just prepared).
  void reset(Label q, double now);
  double last_touch(Label q) const;

 private:
  double t1_;
  double t2_;
  std::map<Label, double> last_;
};

}  // namespace qproto::noise
