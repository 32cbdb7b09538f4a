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


#include "qproto/anon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qproto/parallel.hpp"

namespace qproto::anon {
namespace {

using qsim::Basis;
using qsim::DensityState;
using qsim::Gate;
using qsim::Matrix2;

constexpr qsim::Label kInput = 2;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Dephases S and R, appends the input and runs the BSM circuit up to the
// measurements: CNOT(input -> S), H(input).
DensityState pre_measurement(const AnonConfig& cfg, const DensityState& pair, const DensityState& input) {
  DensityState s = pair;
  noise::apply_dephasing_in_place(s, kSender, cfg.q1);
  noise::apply_dephasing_in_place(s, kReceiver, cfg.q1);
  s = qsim::tensor(s, DensityState(input.matrix(), {kInput}));
  s = qsim::apply_gate(std::move(s), Gate::cnot(kInput, kSender));
  return qsim::apply_gate(std::move(s), Gate::h(kInput));
}

// R's remaining dephasing and the Pauli corrections. The resource is
// |Psi+>, so X is needed when the S outcome m2 is 0 and Z when the input
// outcome m1 is 1. Gate noise follows each gate that is actually applied.
void finish_receiver(const AnonConfig& cfg, DensityState& r, int m1, int m2) {
  noise::apply_dephasing_in_place(r, kReceiver, extra_dephasing(cfg.q1, cfg.q2));
  auto gate = [&](const Gate& g) {
    r.apply_unitary(g.matrix(), g.targets);
    if (cfg.gate_noise) {
      r = noise::apply_channel(std::move(r), kReceiver, *cfg.gate_noise);
    }
  };
  if (m2 == 0) gate(Gate::x(kReceiver));
  if (m1 == 1) gate(Gate::z(kReceiver));
}

Matrix2 pauli(int k) {
  Matrix2 m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, qsim::Complex{0, -1}, qsim::Complex{0, 1}, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Probability that every measuring party still holding a qubit sees 0, when
// the party with label `lost` (or nobody, for lost < 0) was lost.
double all_zero_probability(int n, int lost) {
  DensityState s = qsim::w_state(n);
  if (lost >= 0) {
    std::vector<qsim::Label> keep;
    for (int l = 0; l < n; ++l) {
      if (l != lost) keep.push_back(l);
    }
    s = qsim::partial_trace(s, keep);
  }
  for (int l = 2; l < n; ++l) {
    if (l == lost) continue;
    s = qsim::project(s, l, Basis::z(), 0);
  }
  return s.trace();
}

}  // namespace

void AnonConfig::validate() const {
  if (n_parties < 3 || n_parties > qsim::kMaxQubits) {
    throw std::invalid_argument("n_parties must lie in [3, 10]");
  }
  if (q2 < q1) throw std::invalid_argument("q2 must not be smaller than q1");
  if (!(q1 >= 0.0 && q2 < 0.5)) throw std::invalid_argument("need 0 <= q1 <= q2 < 0.5");
  if (gate_noise) {
    if (gate_noise->kind == noise::ChannelKind::T1T2) {
      throw std::invalid_argument("gate noise must be dephasing or depolarizing");
    }
    gate_noise->validate();
  }
  check_unit(epsilon_corr, "epsilon_corr");
}

void LossConfig::validate() const {
  if (n_parties < 3 || n_parties > qsim::kMaxQubits) {
    throw std::invalid_argument("n_parties must lie in [3, 10]");
  }
  check_unit(eta_d, "eta_d");
  check_unit(eta_tr, "eta_tr");
  check_unit(eta_bsm, "eta_bsm");
  check_unit(eta0, "eta0");
  if (sender_ratio < 0.0 || receiver_ratio < 0.0) {
    throw std::invalid_argument("storage ratios must be non-negative");
  }
}

double LossConfig::eta_node() const { return eta_d * eta_tr; }
double LossConfig::eta_sender() const { return eta_tr * noise::memory_transmittance(eta0, sender_ratio); }
double LossConfig::eta_receiver() const {
  return eta_tr * noise::memory_transmittance(eta0, receiver_ratio);
}

std::optional<DensityState> establish_anonymous_entanglement(const AnonConfig& cfg, Rng& rng) {
  cfg.validate();
  DensityState s = qsim::w_state(cfg.n_parties);
  for (int l = 2; l < cfg.n_parties; ++l) {
    auto m = qsim::measure(s, l, Basis::z(), rng);
    if (m.bit != 0) return std::nullopt;
    s = std::move(m.state);
  }
  return s;
}

DensityState post_selected_pair(int n_parties) {
  DensityState s = qsim::w_state(n_parties);
  for (int l = 2; l < n_parties; ++l) s = qsim::collapse(s, l, Basis::z(), 0);
  return s;
}

DensityState teleport(const AnonConfig& cfg, const DensityState& pair, const qsim::BlochAngles& input,
                      Rng& rng) {
  cfg.validate();
  DensityState s = pre_measurement(cfg, pair, qsim::bloch_state(input, kInput));
  auto first = qsim::measure(s, kInput, Basis::z(), rng);
  auto second = qsim::measure(first.state, kSender, Basis::z(), rng);
  DensityState r = std::move(second.state);
  finish_receiver(cfg, r, first.bit, second.bit);
  return r;
}

DensityState teleport_exact(const AnonConfig& cfg, const DensityState& pair, const DensityState& input) {
  cfg.validate();
  if (input.num_qubits() != 1) throw std::invalid_argument("teleport input must be one qubit");
  const DensityState s = pre_measurement(cfg, pair, input);
  qsim::Matrix sum = qsim::Matrix::Zero(2, 2);
  for (int m1 = 0; m1 < 2; ++m1) {
    const DensityState a = qsim::project(s, kInput, Basis::z(), m1);
    for (int m2 = 0; m2 < 2; ++m2) {
      DensityState r = qsim::project(a, kSender, Basis::z(), m2);
      finish_receiver(cfg, r, m1, m2);
      sum += r.matrix();
    }
  }
  return DensityState(sum, {kReceiver});
}

TeleportChannel::TeleportChannel(const AnonConfig& cfg) {
  cfg.validate();
  const DensityState pair = post_selected_pair(cfg.n_parties);
  auto image = [&](double theta, double phi) -> Matrix2 {
    return teleport_exact(cfg, pair, qsim::bloch_state({theta, phi}, 0)).matrix();
  };
  const double pi = std::numbers::pi;
  // |0>, |1>, |+>, and the +1 eigenstate of Y.
  const Matrix2 e0 = image(0.0, 0.0);
  const Matrix2 e1 = image(pi, 0.0);
  const Matrix2 ex = image(pi / 2, 0.0);
  qsim::Vector ky(2);
  ky << 1.0 / std::sqrt(2.0), qsim::Complex{0.0, 1.0 / std::sqrt(2.0)};
  const Matrix2 ey = teleport_exact(cfg, pair, qsim::pure_state(ky, {0})).matrix();
  pauli_images_[0] = e0 + e1;
  pauli_images_[1] = 2.0 * ex - pauli_images_[0];
  pauli_images_[2] = 2.0 * ey - pauli_images_[0];
  pauli_images_[3] = e0 - e1;
}

DensityState TeleportChannel::output(const qsim::BlochAngles& input) const {
  const Matrix2 rho = qsim::bloch_state(input, 0).matrix();
  Matrix2 out = Matrix2::Zero();
  for (int k = 0; k < 4; ++k) {
    const double c = (rho * pauli(k)).trace().real();
    out += 0.5 * c * pauli_images_[static_cast<std::size_t>(k)];
  }
  return DensityState(out, {kReceiver});
}

double TeleportChannel::fidelity(const qsim::BlochAngles& input) const {
  return qsim::fidelity(output(input), qsim::bloch_ket(input));
}

double average_fidelity(const AnonConfig& cfg) {
  const TeleportChannel channel(cfg);
  return stats::riemann_sphere_average([&](const qsim::BlochAngles& a) { return channel.fidelity(a); });
}

double f_gamma(double q1) {
  check_unit(q1, "q1");
  return 1.0 - 2.0 * q1 * (1.0 - q1);
}

double extra_dephasing(double q1, double q2) {
  if (!(q1 >= 0.0 && q1 < 0.5)) throw std::invalid_argument("q1 must lie in [0, 0.5)");
  if (q2 < q1) throw std::invalid_argument("q2 must not be smaller than q1");
  return (q2 - q1) / (1.0 - 2.0 * q1);
}

double p_fail(const LossConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_parties;
  const int m = n - 2;
  const double eta = cfg.eta_node();
  const double pr_b = std::pow(eta, m);
  const double pr_c = m * (1.0 - eta) * std::pow(eta, m - 1);
  const double pr_d = cfg.eta_bsm * cfg.eta_sender() * cfg.eta_receiver();
  const double a_given_b = 1.0 - 2.0 / n;
  const double a_given_c = 1.0 - 3.0 / n;
  const double p = (1.0 - pr_d + pr_d * a_given_b) * pr_b + (1.0 - pr_d + pr_d * a_given_c) * pr_c +
                   (1.0 - pr_b - pr_c);
  return std::clamp(p, 0.0, 1.0);
}

stats::IntervalEstimate p_fail_monte_carlo(const LossConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const int n = cfg.n_parties;
  // Post-selection probabilities from the simulated post-loss states.
  std::vector<double> pass(static_cast<std::size_t>(n) + 1);
  pass[0] = all_zero_probability(n, -1);
  for (int l = 2; l < n; ++l) pass[static_cast<std::size_t>(l)] = all_zero_probability(n, l);

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> failures(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng = make_rng(seed, 0x616e6f6eULL, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    std::uint64_t fails = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      int lost_count = 0;
      int lost = -1;
      for (int l = 2; l < n; ++l) {
        if (!bernoulli(rng, cfg.eta_node())) {
          ++lost_count;
          lost = l;
        }
      }
      const bool sender_ok = bernoulli(rng, cfg.eta_sender());
      const bool receiver_ok = bernoulli(rng, cfg.eta_receiver());
      const bool bsm_ok = bernoulli(rng, cfg.eta_bsm);
      const double p_pass = pass[static_cast<std::size_t>(lost < 0 ? 0 : lost)];
      const bool vetoed_clear = bernoulli(rng, p_pass);
      const bool ok = lost_count <= 1 && sender_ok && receiver_ok && bsm_ok && vetoed_clear;
      if (!ok) ++fails;
    }
    failures[c] = fails;
  });
  std::uint64_t total = 0;
  for (const auto f : failures) total += f;
  return stats::wilson_interval(total, trials, 0.95);
}

double p_correct_anon(double epsilon_corr) {
  check_unit(epsilon_corr, "epsilon_corr");
  return 1.0 - epsilon_corr;
}

}  // namespace qproto::anon
