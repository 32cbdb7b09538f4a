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

#include "qproto/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qproto::noise {
namespace {

void check_probability(double q, const char* what) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(q));
  }
}

void check_t1t2(double dt, double t1, double t2) {
  if (!(dt >= 0.0)) throw std::invalid_argument("storage interval must be non-negative");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw std::invalid_argument("T1 and T2 must be positive");
  if (t2 > 2.0 * t1) throw std::invalid_argument("T2 must not exceed 2*T1");
}

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, qsim::Complex{0, -1}, qsim::Complex{0, 1}, 0;
  return m;
}
Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

void NoiseChannel::validate() const {
  switch (kind) {
    case ChannelKind::T1T2:
      check_t1t2(0.0, t1, t2);
      break;
    case ChannelKind::Dephasing:
    case ChannelKind::Depolarizing:
      check_probability(q, "noise probability");
      break;
  }
}

void LossModel::validate() const {
  check_probability(eta_sys, "eta_sys");
  check_probability(eta_d, "eta_d");
  check_probability(eta_bsm, "eta_bsm");
  check_probability(eta0, "eta0");
  if (fibre_length < 0.0 || attenuation < 0.0 || storage_ratio < 0.0) {
    throw std::invalid_argument("lengths, attenuation and storage ratio must be non-negative");
  }
}

std::vector<Matrix2> t1t2_kraus(double dt, double t1, double t2) {
  check_t1t2(dt, t1, t2);
  const double gamma = std::isinf(t1) ? 0.0 : -std::expm1(-dt / t1);
  // Amplitude damping already scales coherences by e^{-dt/(2 T1)}; the
  // dephasing part supplies the rest of e^{-dt/T2}.
  const double extra = std::exp(-dt / t2 + (std::isinf(t1) ? 0.0 : dt / (2.0 * t1)));
  const double pz = 0.5 * (1.0 - std::min(1.0, extra));

  Matrix2 a0;
  a0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  Matrix2 a1;
  a1 << 0, std::sqrt(gamma), 0, 0;
  const Matrix2 z = pauli_z();
  return {std::sqrt(1.0 - pz) * a0, std::sqrt(1.0 - pz) * a1, std::sqrt(pz) * z * a0,
          std::sqrt(pz) * z * a1};
}

std::vector<Matrix2> dephasing_kraus(double q) {
  check_probability(q, "dephasing probability");
  return {std::sqrt(1.0 - q) * Matrix2::Identity(), std::sqrt(q) * pauli_z()};
}

std::vector<Matrix2> depolarizing_kraus(double q) {
  check_probability(q, "depolarizing probability");
  const double w = std::sqrt(q / 3.0);
  return {std::sqrt(1.0 - q) * Matrix2::Identity(), w * pauli_x(), w * pauli_y(), w * pauli_z()};
}

void apply_t1t2_in_place(DensityState& state, Label q, double dt, double t1, double t2) {
  check_t1t2(dt, t1, t2);
  if (dt == 0.0) return;
  const auto kraus = t1t2_kraus(dt, t1, t2);
  state.apply_kraus_1q(kraus, q);
}

void apply_dephasing_in_place(DensityState& state, Label q, double prob) {
  check_probability(prob, "dephasing probability");
  if (prob == 0.0) return;
  state.scale_coherences(q, 1.0 - 2.0 * prob);
}

void apply_depolarizing_in_place(DensityState& state, Label q, double prob) {
  check_probability(prob, "depolarizing probability");
  if (prob == 0.0) return;
  const auto kraus = depolarizing_kraus(prob);
  state.apply_kraus_1q(kraus, q);
}

DensityState apply_t1t2(DensityState state, Label q, double dt, double t1, double t2) {
  apply_t1t2_in_place(state, q, dt, t1, t2);
  return state;
}

DensityState apply_dephasing(DensityState state, Label q, double prob) {
  apply_dephasing_in_place(state, q, prob);
  return state;
}

DensityState apply_depolarizing(DensityState state, Label q, double prob) {
  apply_depolarizing_in_place(state, q, prob);
  return state;
}

DensityState apply_channel(DensityState state, Label q, const NoiseChannel& channel, double dt) {
  channel.validate();
  switch (channel.kind) {
    case ChannelKind::T1T2:
      return apply_t1t2(std::move(state), q, dt, channel.t1, channel.t2);
    case ChannelKind::Dephasing:
      return apply_dephasing(std::move(state), q, channel.q);
    case ChannelKind::Depolarizing:
      return apply_depolarizing(std::move(state), q, channel.q);
  }
  throw std::logic_error("unhandled channel kind");
}

double dephasing_probability(double t, double t2) {
  if (t < 0.0 || !(t2 > 0.0)) throw std::invalid_argument("need t >= 0 and T2 > 0");
  return 0.5 * (1.0 - std::exp(-t / t2));
}

double compose_dephasing(double q, double q_prime) { return q + q_prime - 2.0 * q * q_prime; }

int flip_outcome(int bit, const MeasurementFlip& flips, Rng& rng) {
  const double p = bit == 0 ? flips.p1 : flips.p2;
  if (p <= 0.0) return bit;
  return bernoulli(rng, p) ? 1 - bit : bit;
}

double link_transmittance(const LossModel& m) {
  m.validate();
  return m.eta_sys * std::pow(10.0, -m.attenuation * m.fibre_length / 10.0);
}

double memory_transmittance(double eta0, double storage_ratio) {
  check_probability(eta0, "eta0");
  if (storage_ratio < 0.0) throw std::invalid_argument("storage ratio must be non-negative");
  return eta0 * std::exp(-storage_ratio);
}

double db_to_transmittance(double db) { return std::pow(10.0, -db / 10.0); }

DecoherenceLedger::DecoherenceLedger(double t1, double t2) : t1_(t1), t2_(t2) {
  check_t1t2(0.0, t1, t2);
}

void DecoherenceLedger::touch_in_place(DensityState& state, Label q, double now) {
  const double last = last_touch(q);
  if (now < last) {
    throw std::invalid_argument("ledger time moved backwards for qubit " + std::to_string(q));
  }
  apply_t1t2_in_place(state, q, now - last, t1_, t2_);
  last_[q] = now;
}

DensityState DecoherenceLedger::touch(DensityState state, Label q, double now) {
  touch_in_place(state, q, now);
  return state;
}

void DecoherenceLedger::reset(Label q, double now) { last_[q] = now; }

double DecoherenceLedger::last_touch(Label q) const {
  const auto it = last_.find(q);
  return it == last_.end() ? 0.0 : it->second;
}

}  // namespace qproto::noise
