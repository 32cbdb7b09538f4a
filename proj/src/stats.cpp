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


#include "qproto/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace qproto::stats {

double normal_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 0.5 + 0.5 * confidence);
}

IntervalEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("wilson_interval needs at least one trial");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const double z = normal_z(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  IntervalEstimate out;
  out.mean = p;
  // Pin the boundaries so that 0/n and n/n give exact 0 and 1.
  out.lower = successes == 0 ? 0.0 : std::min(p, std::max(0.0, centre - half));
  out.upper = successes == trials ? 1.0 : std::max(p, std::min(1.0, centre + half));
  out.confidence = confidence;
  out.n_trials = trials;
  return out;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_inverse(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("entropy_inverse argument outside [0, 1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double serfling_mu(std::uint64_t n_remaining, std::uint64_t k_sample, double epsilon) {
  if (n_remaining == 0 || k_sample == 0) throw std::invalid_argument("serfling_mu needs n, k >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double n = static_cast<double>(n_remaining);
  const double k = static_cast<double>(k_sample);
  return std::sqrt((n + k) * (k + 1.0) * std::log(1.0 / epsilon) / (2.0 * n * k * k));
}

double riemann_sphere_average(const std::function<double(const qsim::BlochAngles&)>& f) {
  constexpr int kSteps = 80;
  constexpr double pi = std::numbers::pi;
  double sum = 0.0;
  for (int k = 0; k < kSteps; ++k) {
    const double theta = pi / 160.0 + k * pi / kSteps;
    const double s = std::sin(theta);
    for (int m = 0; m < kSteps; ++m) {
      const double phi = pi / 80.0 + m * 2.0 * pi / kSteps;
      sum += f({theta, phi}) * s;
    }
  }
  return pi / (2.0 * kSteps * kSteps) * sum;
}

}  // namespace qproto::stats
