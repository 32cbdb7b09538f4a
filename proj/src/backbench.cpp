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


#include "qproto/backbench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qproto/money.hpp"
#include "qproto/parallel.hpp"
#include "qproto/rng.hpp"

namespace qproto::backbench {
namespace {

struct Scored {
  Genome genome;
  double cost;
};

Genome clamp_genome(Genome g, const Genome& baseline, double factor) {
  g.t1 = std::clamp(g.t1, baseline.t1, factor * baseline.t1);
  g.t2 = std::clamp(g.t2, baseline.t2, factor * baseline.t2);
  g.t2 = std::min(g.t2, 2.0 * g.t1);
  return g;
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

const Scored& tournament(const std::vector<Scored>& pop, int size, Rng& rng) {
  std::size_t best = uniform_index(rng, pop.size());
  for (int i = 1; i < size; ++i) {
    const std::size_t c = uniform_index(rng, pop.size());
    if (pop[c].cost < pop[best].cost) best = c;
  }
  return pop[best];
}

}  // namespace

void CostWeights::validate() const {
  if (w1 < 0.0 || w2 < 0.0 || (w1 == 0.0 && w2 == 0.0)) {
    throw std::invalid_argument("weights must be non-negative and not both zero");
  }
}

void GaParams::validate() const {
  if (population < 4) throw std::invalid_argument("population must be at least 4");
  if (generations < 0) throw std::invalid_argument("generations must be non-negative");
  if (tournament_size < 1) throw std::invalid_argument("tournament_size must be at least 1");
  if (elitism < 0 || elitism >= population) throw std::invalid_argument("elitism must lie in [0, population)");
  if (!(mutation_sigma >= 0.0)) throw std::invalid_argument("mutation_sigma must be non-negative");
  if (!(upper_factor > 1.0)) throw std::invalid_argument("upper_factor must exceed 1");
}

double squash(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("squash needs T > 0");
  return t / (1.0 + t);
}

double hardware_cost(const Genome& g, const Genome& baseline) {
  if (g.t1 < baseline.t1 || g.t2 < baseline.t2) {
    throw std::invalid_argument("genome lies below the baseline hardware");
  }
  // 1 / log_b(x) = ln b / ln x.
  const double c1 = std::log(squash(baseline.t1)) / std::log(squash(g.t1));
  const double c2 = std::log(squash(baseline.t2)) / std::log(squash(g.t2));
  return c1 + c2;
}

double total_cost(const Genome& g, const Genome& baseline, const CostWeights& weights, double c_estimate) {
  weights.validate();
  if (!(c_estimate >= 0.0 && c_estimate <= 1.0)) throw std::invalid_argument("c must lie in [0, 1]");
  const double step = weights.c_min - c_estimate > 0.0 ? 1.0 : 0.0;
  return weights.w1 * step + weights.w2 * hardware_cost(g, baseline);
}

GaResult ga_optimize(const Objective& objective, const Genome& baseline, const GaParams& ga,
                     unsigned threads) {
  ga.validate();
  const auto n = static_cast<std::size_t>(ga.population);
  Rng rng = make_rng(ga.seed, 0x6761ULL);

  auto evaluate = [&](std::vector<Scored>& pop, std::size_t first, int generation) {
    parallel_for(pop.size() - first, threads, [&](std::size_t k) {
      const std::size_t i = first + k;
      pop[i].cost = objective(pop[i].genome, derive_seed(ga.seed, static_cast<std::uint64_t>(generation), i));
    });
  };
  auto by_cost = [](const Scored& a, const Scored& b) { return a.cost < b.cost; };

  std::vector<Scored> pop(n);
  for (auto& s : pop) {
    s.genome = clamp_genome({log_uniform(rng, baseline.t1, ga.upper_factor * baseline.t1),
                             log_uniform(rng, baseline.t2, ga.upper_factor * baseline.t2)},
                            baseline, ga.upper_factor);
  }
  evaluate(pop, 0, 0);
  std::stable_sort(pop.begin(), pop.end(), by_cost);

  GaResult result;
  result.history.push_back(pop.front().cost);
  const auto elites = static_cast<std::size_t>(ga.elitism);
  for (int gen = 1; gen <= ga.generations; ++gen) {
    std::vector<Scored> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(elites));
    next.reserve(n);
    while (next.size() < n) {
      const Genome& a = tournament(pop, ga.tournament_size, rng).genome;
      const Genome& b = tournament(pop, ga.tournament_size, rng).genome;
      Genome child{random_bit(rng) ? a.t1 : b.t1, random_bit(rng) ? a.t2 : b.t2};
      child.t1 *= std::exp(ga.mutation_sigma * standard_normal(rng));
      child.t2 *= std::exp(ga.mutation_sigma * standard_normal(rng));
      next.push_back({clamp_genome(child, baseline, ga.upper_factor), 0.0});
    }
    evaluate(next, elites, gen);
    std::stable_sort(next.begin(), next.end(), by_cost);
    pop = std::move(next);
    result.history.push_back(std::min(result.history.back(), pop.front().cost));
  }
  result.best = pop.front().genome;
  result.best_cost = pop.front().cost;
  return result;
}

Objective money_objective(double storage_time, const Genome& baseline, const CostWeights& weights,
                          const noise::MeasurementFlip& flips, std::uint64_t block_size, int repetitions) {
  weights.validate();
  return [=](const Genome& g, std::uint64_t seed) {
    money::BanknoteConfig cfg;
    cfg.wait_time = storage_time;
    cfg.profile = {g.t1, g.t2, flips};
    const auto c = money::estimate_c(cfg, block_size, repetitions, seed);
    return total_cost(g, baseline, weights, c.mean);
  };
}

}  // namespace qproto::backbench
