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

#include <cstdint>
#include <functional>

#include "qproto/qsim.hpp"

namespace qproto::stats {

struct IntervalEstimate {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double confidence = 0.95;
  std::uint64_t n_trials = 0;

  bool contains(double x) const { return lower <= x && x <= upper; }
  double width() const { return upper - lower; }
};

/// Wilson score interval for a binomial proportion. Throws for trials == 0.
IntervalEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                 double confidence = 0.95);

/// Two-sided standard normal quantile, e.g. 1.95996 for 0.95.
double normal_z(double confidence);

/// Binary entropy in bits, with 0 log 0 = 0.
double binary_entropy(double x);
/// Inverse of binary_entropy on [0, 0.5], by bisection to 1e-12.
double entropy_inverse(double y);

/// Serfling deviation for sampling k of n + k bits without replacement:
/// sqrt((n+k)(k+1) ln(1/eps) / (2 n k^2)).
double serfling_mu(std::uint64_t n_remaining, std::uint64_t k_sample, double epsilon);

/// Midpoint Riemann sum of f over the Bloch sphere on an 80 x 80 grid,
/// normalized so that f == 1 gives ~1.
double riemann_sphere_average(const std::function<double(const qsim::BlochAngles&)>& f);

}  // namespace qproto::stats
