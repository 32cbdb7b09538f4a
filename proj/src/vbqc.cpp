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


#include "qproto/vbqc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qproto/parallel.hpp"

namespace qproto::vbqc {
namespace {

using qsim::Basis;
using qsim::DensityState;
using qsim::Label;

// Three |Phi+> links (1,2), (3,4), (5,6), prepared without noise.
DensityState initial_links() {
  qsim::Vector bell(4);
  const double s = 1.0 / std::sqrt(2.0);
  bell << s, 0, 0, s;
  DensityState out = qsim::pure_state(bell, {1, 2});
  out = qsim::tensor(out, qsim::pure_state(bell, {3, 4}));
  return qsim::tensor(out, qsim::pure_state(bell, {5, 6}));
}

// The joint client/server register with gate, readout and optional memory
// noise. Operations run back to back, so the clock is the sum of the
// durations so far.
class Device {
 public:
  Device(const VbqcProfile& profile, Rng& rng) : profile_(profile), rng_(rng), state_(initial_links()) {
    if (profile.memory) ledger_.emplace(profile.memory->t1, profile.memory->t2);
  }

  void cz(Label a, Label b) {
    age(a);
    age(b);
    const auto g = qsim::Gate::cz(a, b);
    state_.apply_unitary(g.matrix(), g.targets);
    depolarize(a);
    depolarize(b);
    clock_ += profile_.durations.cz;
  }

  /// M^alpha: one basis-change gate onto Z, then a noisy Z readout.
  int measure_rotated(Label q, int units) {
    age(q);
    const qsim::Matrix u = Basis::rotated(angle_radians(units)).to_computational();
    const Label targets[] = {q};
    state_.apply_unitary(u, targets);
    depolarize(q);
    clock_ += profile_.durations.single_qubit;
    return readout(q);
  }

  int measure_z(Label q) {
    age(q);
    return readout(q);
  }

 private:
  void age(Label q) {
    if (ledger_) ledger_->touch_in_place(state_, q, clock_);
  }

  void depolarize(Label q) { noise::apply_depolarizing_in_place(state_, q, profile_.gate_depolarizing_q); }

  int readout(Label q) {
    auto m = qsim::measure(state_, q, Basis::z(), rng_);
    state_ = std::move(m.state);
    clock_ += profile_.durations.measurement;
    return noise::flip_outcome(m.bit, profile_.flips, rng_);
  }

  const VbqcProfile& profile_;
  Rng& rng_;
  DensityState state_;
  std::optional<noise::DecoherenceLedger> ledger_;
  double clock_ = 0.0;
};

int random_angle(Rng& rng) { return static_cast<int>(uniform_index(rng, 8)); }

}  // namespace

void VbqcProfile::validate() const {
  if (!(gate_depolarizing_q >= 0.0 && gate_depolarizing_q <= 1.0)) {
    throw std::invalid_argument("gate depolarizing probability must lie in [0, 1]");
  }
  if (!(flips.p1 >= 0.0 && flips.p1 <= 1.0 && flips.p2 >= 0.0 && flips.p2 <= 1.0)) {
    throw std::invalid_argument("flip probabilities must lie in [0, 1]");
  }
  if (durations.single_qubit < 0.0 || durations.cnot < 0.0 || durations.cz < 0.0 ||
      durations.measurement < 0.0) {
    throw std::invalid_argument("gate durations must be non-negative");
  }
  if (memory) noise::NoiseChannel::t1t2(memory->t1, memory->t2).validate();
}

void VbqcParams::validate() const {
  if (d < 1 || t < 1) throw std::invalid_argument("d and t must be at least 1");
  if (w < 0 || w > t) throw std::invalid_argument("w must lie in [0, t]");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (x != 0 && x != 1) throw std::invalid_argument("x must be 0 or 1");
  for (const int p : phis) {
    if (p < 0 || p > 7) throw std::invalid_argument("phi must be k*pi/8 with k in 0..7");
  }
}

int wrap_angle(int units) { return ((units % 16) + 16) % 16; }

double angle_radians(int units) { return wrap_angle(units) * std::numbers::pi / 8.0; }

bool run_test_round(const VbqcProfile& profile, Rng& rng) {
  profile.validate();
  Device dev(profile, rng);
  dev.cz(1, 3);
  dev.cz(3, 5);

  const int u = 1 + random_bit(rng);
  std::array<int, 3> theta{random_angle(rng), random_angle(rng), random_angle(rng)};
  int g1 = 0, g2 = 0, g3 = 0, d1 = 0, d2 = 0, d3 = 0;
  if (u == 1) {
    g1 = dev.measure_rotated(2, -theta[0]);
    g3 = dev.measure_rotated(6, -theta[2]);
    d2 = dev.measure_z(4);
  } else {
    g2 = dev.measure_rotated(4, -theta[1]);
    d1 = dev.measure_z(2);
    d3 = dev.measure_z(6);
  }
  std::array<int, 3> r{random_bit(rng), random_bit(rng), random_bit(rng)};

  const int delta1 = u == 1 ? theta[0] + 8 * (r[0] + d2 + g1) : random_angle(rng);
  const int b1 = dev.measure_rotated(1, delta1);
  const int delta2 = u == 1 ? random_angle(rng) : theta[1] + 8 * (r[1] + d1 + d3 + g2);
  const int b2 = dev.measure_rotated(3, delta2);
  const int delta3 = u == 1 ? theta[2] + 8 * (r[2] + d2 + g3) : random_angle(rng);
  const int b3 = dev.measure_rotated(5, delta3);

  return u == 1 ? (r[0] == b1 && r[2] == b3) : r[1] == b2;
}

ComputationTranscript run_computation_transcript(const VbqcProfile& profile, const VbqcParams& params,
                                                 Rng& rng) {
  profile.validate();
  params.validate();
  Device dev(profile, rng);
  dev.cz(1, 3);
  dev.cz(3, 5);

  ComputationTranscript tr;
  for (auto& th : tr.theta) th = random_angle(rng);
  tr.g[0] = dev.measure_rotated(2, -tr.theta[0]);
  tr.g[1] = dev.measure_rotated(4, -tr.theta[1]);
  tr.g[2] = dev.measure_rotated(6, -tr.theta[2]);
  for (auto& ri : tr.r) ri = random_bit(rng);

  const auto& phi = params.phis;
  const auto& r = tr.r;
  const auto& g = tr.g;
  auto sign = [](int bits) { return (bits & 1) ? -1 : 1; };
  tr.delta[0] = wrap_angle(phi[0] + tr.theta[0] + 8 * (params.x + r[0] + g[0]));
  tr.b[0] = dev.measure_rotated(1, tr.delta[0]);
  tr.delta[1] = wrap_angle(sign(tr.b[0] + r[0]) * phi[1] + tr.theta[1] + 8 * (r[1] + g[1]));
  tr.b[1] = dev.measure_rotated(3, tr.delta[1]);
  tr.delta[2] = wrap_angle(sign(tr.b[1] + r[1]) * phi[2] + tr.theta[2] + 8 * (tr.b[0] + r[0] + r[2] + g[2]));
  tr.b[2] = dev.measure_rotated(5, tr.delta[2]);
  tr.output = tr.b[2] ^ r[2];
  return tr;
}

int run_computation_round(const VbqcProfile& profile, const VbqcParams& params, Rng& rng) {
  return run_computation_transcript(profile, params, rng).output;
}

stats::IntervalEstimate estimate_test_failure(const VbqcProfile& profile, std::uint64_t trials,
                                              double confidence, std::uint64_t seed, unsigned threads) {
  if (trials < 100) throw std::invalid_argument("estimate_test_failure needs at least 100 trials");
  profile.validate();
  std::vector<std::uint8_t> failed(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, 0x74657374ULL, i);
    failed[i] = run_test_round(profile, rng) ? 0 : 1;
  });
  std::uint64_t failures = 0;
  for (const auto f : failed) failures += f;
  return stats::wilson_interval(failures, trials, confidence);
}

std::optional<std::pair<double, double>> wt_feasible_range(double p_max, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const double high = 1.0 / (2.0 * k);
  if (p_max >= high) return std::nullopt;
  return std::make_pair(p_max, high);
}

ProtocolOutcome run_protocol(const VbqcProfile& profile, const VbqcParams& params, Rng& rng) {
  profile.validate();
  params.validate();
  const int total = params.d + params.t;
  // Fisher-Yates over the round kinds picks the test positions uniformly.
  std::vector<bool> is_test(static_cast<std::size_t>(total), false);
  for (int i = 0; i < params.t; ++i) is_test[static_cast<std::size_t>(i)] = true;
  for (int i = total - 1; i > 0; --i) {
    const auto j = uniform_index(rng, static_cast<std::uint64_t>(i) + 1);
    const bool tmp = is_test[static_cast<std::size_t>(i)];
    is_test[static_cast<std::size_t>(i)] = is_test[j];
    is_test[j] = tmp;
  }

  ProtocolOutcome out;
  int ones = 0;
  for (int i = 0; i < total; ++i) {
    if (is_test[static_cast<std::size_t>(i)]) {
      if (!run_test_round(profile, rng)) ++out.failed_tests;
    } else {
      ones += run_computation_round(profile, params, rng);
    }
  }
  if (out.failed_tests > params.w) {
    out.aborted = true;
    return out;
  }
  const int zeros = params.d - ones;
  out.output = ones > zeros ? 1 : ones < zeros ? 0 : random_bit(rng);
  return out;
}

}  // namespace qproto::vbqc
