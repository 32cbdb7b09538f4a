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


#include "qproto/qds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qproto/errors.hpp"
#include "qproto/parallel.hpp"
#include "qproto/qsim.hpp"
#include "qproto/stats.hpp"

namespace qproto::qds {
namespace {

constexpr std::size_t kMinSifted = 10;

// P(outcome 1) for [prepared basis][bit][measured basis], basis 0 = Z,
// 1 = X, from the single-photon states themselves.
using OutcomeTable = std::array<std::array<std::array<double, 2>, 2>, 2>;

OutcomeTable bb84_table() {
  OutcomeTable t{};
  const double s = 1.0 / std::sqrt(2.0);
  for (int basis = 0; basis < 2; ++basis) {
    for (int bit = 0; bit < 2; ++bit) {
      qsim::Vector ket(2);
      if (basis == 0) {
        ket << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
      } else {
        ket << s, (bit == 0 ? s : -s);
      }
      const auto photon = qsim::pure_state(ket, {0});
      t[basis][bit][0] = qsim::outcome_probability(photon, 0, qsim::Basis::z(), 1);
      t[basis][bit][1] = qsim::outcome_probability(photon, 0, qsim::Basis::x(), 1);
    }
  }
  return t;
}

double error_rate(const Bits& a, const Bits& b, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0.0;
  std::size_t diff = 0;
  for (const auto i : idx) diff += a[i] != b[i] ? 1 : 0;
  return static_cast<double>(diff) / static_cast<double>(idx.size());
}

std::size_t mismatches(const Bits& a, const Bits& b) {
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i] ? 1 : 0;
  return diff;
}

Bits gather(const Bits& src, const std::vector<std::size_t>& idx) {
  Bits out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(src[i]);
  return out;
}

void check_open_unit(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

}  // namespace

void QdsConfig::validate() const {
  if (n_photons < 1) throw std::invalid_argument("n_photons must be at least 1");
  if (!(p_x >= 0.5 && p_x <= 1.0)) throw std::invalid_argument("p_x must lie in [0.5, 1]");
  check_open_unit(r, "r");
  check_open_unit(epsilon, "epsilon");
  check_open_unit(epsilon_pe, "epsilon_pe");
  check_open_unit(a, "a");
  if (!(e_d >= 0.0 && e_d <= 1.0)) throw std::invalid_argument("e_d must lie in [0, 1]");
  loss.validate();
}

KgpResult run_kgp(const QdsConfig& cfg, Rng& rng) {
  cfg.validate();
  static const OutcomeTable table = bb84_table();
  const double eta = noise::link_transmittance(cfg.loss);
  KgpResult out;
  out.sent = cfg.n_photons;
  for (std::uint64_t i = 0; i < cfg.n_photons; ++i) {
    const int basis = bernoulli(rng, cfg.p_x) ? 1 : 0;
    const int bit = random_bit(rng);
    if (!bernoulli(rng, eta)) continue;
    ++out.detected;
    const int alice_basis = bernoulli(rng, cfg.p_x) ? 1 : 0;
    int outcome = bernoulli(rng, table[basis][bit][alice_basis]) ? 1 : 0;
    if (bernoulli(rng, cfg.e_d)) outcome ^= 1;
    if (alice_basis != basis) continue;
    if (basis == 1) {
      out.x_alice.push_back(static_cast<std::uint8_t>(outcome));
      out.x_recipient.push_back(static_cast<std::uint8_t>(bit));
    } else {
      out.z_alice.push_back(static_cast<std::uint8_t>(outcome));
      out.z_recipient.push_back(static_cast<std::uint8_t>(bit));
    }
  }
  return out;
}

SiftedSplit split_sifted(std::size_t n, double r, Rng& rng) {
  if (n < kMinSifted) {
    throw DegenerateInput("sifted string has " + std::to_string(n) + " bits, need at least " +
                          std::to_string(kMinSifted));
  }
  check_open_unit(r, "r");
  const auto k = static_cast<std::size_t>(std::floor(r * static_cast<double>(n)));
  if (k < 1 || n - k < 2) {
    throw DegenerateInput("sampling fraction leaves nothing to sample or split");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i + 1));
    std::swap(idx[i], idx[j]);
  }
  SiftedSplit s;
  s.sample.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::size_t rest = n - k;
  auto cursor = idx.begin() + static_cast<std::ptrdiff_t>(k);
  if (rest % 2 == 1) {
    s.dropped.push_back(*cursor++);
    --rest;
  }
  const auto half = static_cast<std::ptrdiff_t>(rest / 2);
  s.forward.assign(cursor, cursor + half);
  s.keep.assign(cursor + half, cursor + 2 * half);
  return s;
}

DistributionResult distribution_stage(const QdsConfig& cfg, std::uint64_t seed, unsigned threads) {
  cfg.validate();
  // Slot 2m + j: message m, recipient j (0 = Bob, 1 = Charlie).
  std::array<KgpResult, 4> kgp;
  std::array<SiftedSplit, 4> split;
  parallel_for(4, threads, [&](std::size_t slot) {
    Rng rng = make_rng(seed, 0x716473ULL, slot);
    kgp[slot] = run_kgp(cfg, rng);
    split[slot] = split_sifted(kgp[slot].x_alice.size(), cfg.r, rng);
    if (kgp[slot].z_alice.empty()) throw DegenerateInput("no Z-sifted bits for the phase-error estimate");
  });

  DistributionResult out;
  for (int m = 0; m < 2; ++m) {
    for (int j = 0; j < 2; ++j) {
      const auto slot = static_cast<std::size_t>(2 * m + j);
      const auto& k = kgp[slot];
      const auto& s = split[slot];
      auto& est = out.estimates[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      est.e_x_obs = error_rate(k.x_alice, k.x_recipient, s.sample);
      est.k_sample = s.sample.size();
      est.n_remaining = k.x_alice.size() - s.sample.size();
      est.n_z = k.z_alice.size();
      std::vector<std::size_t> all_z(k.z_alice.size());
      std::iota(all_z.begin(), all_z.end(), std::size_t{0});
      est.e_z_obs = error_rate(k.z_alice, k.z_recipient, all_z);
    }
    const auto& kb = kgp[static_cast<std::size_t>(2 * m)];
    const auto& sb = split[static_cast<std::size_t>(2 * m)];
    const auto& kc = kgp[static_cast<std::size_t>(2 * m + 1)];
    const auto& sc = split[static_cast<std::size_t>(2 * m + 1)];
    auto& ms = out.strings.message[static_cast<std::size_t>(m)];
    ms.bob_keep = gather(kb.x_recipient, sb.keep);
    ms.alice_bob_keep = gather(kb.x_alice, sb.keep);
    ms.bob_forward = gather(kb.x_recipient, sb.forward);
    ms.alice_bob_forward = gather(kb.x_alice, sb.forward);
    ms.charlie_keep = gather(kc.x_recipient, sc.keep);
    ms.alice_charlie_keep = gather(kc.x_alice, sc.keep);
    ms.charlie_forward = gather(kc.x_recipient, sc.forward);
    ms.alice_charlie_forward = gather(kc.x_alice, sc.forward);
  }
  return out;
}

ErrorBounds bound_errors(double e_obs, std::uint64_t n_remaining, std::uint64_t k_sample,
                         std::uint64_t n_z_sample, double e_z_obs, double epsilon_pe) {
  ErrorBounds b;
  b.e_u_x = std::min(0.5, e_obs + stats::serfling_mu(n_remaining, k_sample, epsilon_pe));
  b.phi_u_x = std::min(0.5, e_z_obs + stats::serfling_mu(n_remaining, n_z_sample, epsilon_pe));
  return b;
}

Thresholds compute_thresholds(double phi_u_x, double e_u_x) {
  if (!(phi_u_x >= 0.0 && phi_u_x <= 0.5 && e_u_x >= 0.0 && e_u_x <= 0.5)) {
    throw std::invalid_argument("error bounds must lie in [0, 0.5]");
  }
  Thresholds t;
  t.p_e = stats::entropy_inverse(1.0 - stats::binary_entropy(phi_u_x));
  t.s_a = (t.p_e + 2.0 * e_u_x) / 3.0;
  t.s_v = (2.0 * t.p_e + e_u_x) / 3.0;
  return t;
}

QdsSecurityReport security_levels(std::size_t l, const Thresholds& th, double e_u_x, double phi_u_x,
                                  const QdsConfig& cfg) {
  if (l < 1) throw std::invalid_argument("signature length must be at least 1");
  const double len = static_cast<double>(l);
  QdsSecurityReport rep;
  rep.p_abort = 2.0 * cfg.epsilon_pe;
  const double gap = th.s_a - th.s_v;
  rep.p_rep = std::min(1.0, 2.0 * std::exp(-0.5 * len * gap * gap));
  const double exponent = -len * (1.0 - stats::binary_entropy(phi_u_x) - stats::binary_entropy(th.s_v));
  const double eps_f = (cfg.epsilon + std::exp2(exponent)) / cfg.a;
  rep.p_for = std::min(1.0, cfg.a + eps_f + 8.0 * cfg.epsilon_pe);
  rep.s_a = th.s_a;
  rep.s_v = th.s_v;
  rep.p_e = th.p_e;
  rep.e_u_x = e_u_x;
  rep.phi_u_x = phi_u_x;
  rep.l = l;
  return rep;
}

Verdict messaging_stage(const SignatureStrings& strings, const Thresholds& th, int m) {
  if (m != 0 && m != 1) throw std::invalid_argument("message must be 0 or 1");
  const auto& s = strings.message[static_cast<std::size_t>(m)];
  if (s.bob_keep.size() != s.alice_bob_keep.size() || s.bob_forward.size() != s.alice_bob_forward.size() ||
      s.charlie_keep.size() != s.alice_charlie_keep.size() ||
      s.charlie_forward.size() != s.alice_charlie_forward.size()) {
    throw std::invalid_argument("signature strings are not aligned");
  }
  const double l = static_cast<double>(s.l());
  auto below = [&](std::size_t count, double frac) { return static_cast<double>(count) < frac * l; };
  Verdict v;
  v.bob_accepts = below(mismatches(s.bob_keep, s.alice_bob_keep), th.s_a) &&
                  below(mismatches(s.charlie_forward, s.alice_charlie_forward), th.s_a);
  v.charlie_accepts = below(mismatches(s.charlie_keep, s.alice_charlie_keep), th.s_v) &&
                      below(mismatches(s.bob_forward, s.alice_bob_forward), th.s_v);
  return v;
}

QdsSecurityReport evaluate(const QdsConfig& cfg, std::uint64_t seed, unsigned threads) {
  const DistributionResult dist = distribution_stage(cfg, seed, threads);
  constexpr int m = 0;
  double e_u = 0.0;
  double phi_u = 0.0;
  for (const auto& est : dist.estimates[m]) {
    const ErrorBounds b =
        bound_errors(est.e_x_obs, est.n_remaining, est.k_sample, est.n_z, est.e_z_obs, cfg.epsilon_pe);
    e_u = std::max(e_u, b.e_u_x);
    phi_u = std::max(phi_u, b.phi_u_x);
  }
  const Thresholds th = compute_thresholds(phi_u, e_u);
  return security_levels(dist.strings.message[m].l(), th, e_u, phi_u, cfg);
}

}  // namespace qproto::qds
