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
#include <vector>

#include "qproto/noise.hpp"

// Backward benchmarking: search for the cheapest memory (T1, T2) that keeps
// the money protocol secure.
namespace qproto::backbench {

/// Both coordinates in seconds.
struct Genome {
  double t1 = 36000.0;
  double t2 = 1.0;
};

struct CostWeights {
  double w1 = 1000.0;
  double w2 = 1.0;
  double c_min = 0.875;

  void validate() const;
};

struct GaParams {
  int population = 32;
  int generations = 60;
  int tournament_size = 3;
  double mutation_sigma = 0.3;  // std of the log-space step
  int elitism = 2;
  std::uint64_t seed = 1;
  double upper_factor = 100.0;  // genomes live in [baseline, upper_factor * baseline]

  void validate() const;
};

/// T / (1 + T).
double squash(double t);

/// 1/log_{T1b'}(T1') + 1/log_{T2b'}(T2') with T' = squash(T). Equals 2 at
/// the baseline; throws when either coordinate is below its baseline.
double hardware_cost(const Genome& g, const Genome& baseline);

/// w1 step(c_min - c) + w2 hardware_cost, with step(0) = 0.
double total_cost(const Genome& g, const Genome& baseline, const CostWeights& weights, double c_estimate);

/// Objective evaluated with a per-evaluation seed.
using Objective = std::function<double(const Genome&, std::uint64_t seed)>;

struct GaResult {
  Genome best;
  double best_cost = 0.0;
  std::vector<double> history;  // best cost after each generation, generation 0 first
};

/// Tournament selection, uniform crossover, log-normal mutation, clamping
/// and elitism. Elites keep their recorded cost, so history never rises.
/// Evaluation i of generation g uses derive_seed(seed, g, i); results do not
/// depend on `threads`.
GaResult ga_optimize(const Objective& objective, const Genome& baseline, const GaParams& ga,
                     unsigned threads = 1);

/// total_cost with c estimated by the money simulation at the given storage
/// time (block_size pairs x repetitions).
Objective money_objective(double storage_time, const Genome& baseline, const CostWeights& weights,
                          const noise::MeasurementFlip& flips, std::uint64_t block_size = 1000,
                          int repetitions = 5);

}  // namespace qproto::backbench
