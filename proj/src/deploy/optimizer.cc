// Copyright 2026 The distips Authors
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

#include "distips/deploy/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "distips/common/error.h"
#include "distips/common/random.h"

namespace distips {

void BrkgaParams::Validate() const {
  if (population < 2) throw InputError("BRKGA population must be at least 2");
  if (!(elite_fraction > 0 && elite_fraction < 1) ||
      !(mutant_fraction > 0 && mutant_fraction < 1) ||
      elite_fraction + mutant_fraction >= 1) {
    throw InputError("BRKGA needs elite, mutant in (0,1) with elite + mutant < 1");
  }
  if (!(inherit_prob > 0 && inherit_prob < 1)) {
    throw InputError("BRKGA inherit probability must be in (0, 1)");
  }
  if (generations < 0) throw InputError("BRKGA generations must be non-negative");
  if (replicas_per_color < 1) throw InputError("replicas per color must be at least 1");
}

Placement DecodeChromosome(std::span<const double> keys, int switch_count,
                           int n_colors, int replicas, PlacementMode mode) {
  if (keys.size() != static_cast<size_t>(switch_count) * static_cast<size_t>(n_colors)) {
    throw InputError("chromosome length must be switches x colors");
  }
  Placement p = Placement::Empty(mode, n_colors, switch_count);
  std::vector<int> order(static_cast<size_t>(switch_count));
  for (int c = 0; c < n_colors; ++c) {
    const auto color_keys = keys.subspan(static_cast<size_t>(c) * static_cast<size_t>(switch_count),
                                         static_cast<size_t>(switch_count));
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + replicas, order.end(),
                      [&](int a, int b) {
                        const double ka = color_keys[static_cast<size_t>(a)];
                        const double kb = color_keys[static_cast<size_t>(b)];
                        return ka != kb ? ka > kb : a < b;
                      });
    for (int i = 0; i < replicas; ++i) {
      p.colors[static_cast<size_t>(order[static_cast<size_t>(i)])] |= 1u << c;
    }
  }
  return p;
}

namespace {

struct ColorsHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ULL;
    for (uint32_t x : v) h = (h ^ x) * 1099511628211ULL;
    return static_cast<size_t>(h);
  }
};

void CheckInstance(const NetworkGraph& g, int n_colors, int replicas,
                   PlacementMode mode) {
  if (g.switch_count() < 1) throw InputError("graph has no switches");
  if (mode == PlacementMode::kStrongLearner && n_colors != 1) {
    throw InputError("strong-learner placements use a single pseudo-color");
  }
  if (replicas > g.switch_count()) {
    throw InputError("replicas per color exceeds the switch count");
  }
}

}  // namespace

DeploymentPlan BrkgaSolve(const NetworkGraph& g,
                          const std::vector<Commodity>& commodities,
                          int n_colors, PlacementMode mode,
                          const BrkgaParams& params) {
  params.Validate();
  CheckInstance(g, n_colors, params.replicas_per_color, mode);
  const int n_switches = g.switch_count();
  const size_t genes = static_cast<size_t>(n_switches) * static_cast<size_t>(n_colors);
  const int pop = params.population;
  const int n_elite = std::max(1, static_cast<int>(params.elite_fraction * pop));
  const int n_mutant = static_cast<int>(params.mutant_fraction * pop);

  Rng rng(params.seed);
  std::unordered_map<std::vector<uint32_t>, double, ColorsHash> cache;
  auto fitness = [&](const std::vector<double>& keys) {
    Placement p = DecodeChromosome(keys, n_switches, n_colors,
                                   params.replicas_per_color, mode);
    auto it = cache.find(p.colors);
    if (it != cache.end()) return it->second;
    const double obj = EvaluatePlacement(g, p, commodities).objective;
    cache.emplace(std::move(p.colors), obj);
    return obj;
  };
  auto random_keys = [&] {
    std::vector<double> keys(genes);
    for (double& k : keys) k = rng.Uniform01();
    return keys;
  };

  struct Individual {
    std::vector<double> keys;
    double fitness;
  };
  std::vector<Individual> population;
  population.reserve(static_cast<size_t>(pop));
  for (int i = 0; i < pop; ++i) {
    auto keys = random_keys();
    const double f = fitness(keys);
    population.push_back({std::move(keys), f});
  }
  auto rank = [](std::vector<Individual>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Individual& a, const Individual& b) {
      return a.fitness < b.fitness;
    });
  };
  rank(population);

  for (int gen = 0; gen < params.generations; ++gen) {
    std::vector<Individual> next;
    next.reserve(static_cast<size_t>(pop));
    for (int i = 0; i < n_elite; ++i) next.push_back(population[static_cast<size_t>(i)]);
    for (int i = 0; i < n_mutant; ++i) {
      auto keys = random_keys();
      const double f = fitness(keys);
      next.push_back({std::move(keys), f});
    }
    while (static_cast<int>(next.size()) < pop) {
      const auto& elite = population[rng.Index(static_cast<size_t>(n_elite))];
      const auto& other = population[static_cast<size_t>(n_elite) +
                                     rng.Index(static_cast<size_t>(pop - n_elite))];
      std::vector<double> child(genes);
      for (size_t k = 0; k < genes; ++k) {
        child[k] = rng.Uniform01() < params.inherit_prob ? elite.keys[k] : other.keys[k];
      }
      const double f = fitness(child);
      next.push_back({std::move(child), f});
    }
    rank(next);
    population = std::move(next);
  }

  const Placement best = DecodeChromosome(population.front().keys, n_switches, n_colors,
                                          params.replicas_per_color, mode);
  return MakePlan(g, best, commodities, params.replicas_per_color);
}

DeploymentPlan BruteForcePlacement(const NetworkGraph& g,
                                   const std::vector<Commodity>& commodities,
                                   int n_colors, int replicas, PlacementMode mode,
                                   uint64_t guard) {
  CheckInstance(g, n_colors, replicas, mode);
  if (replicas < 1) throw InputError("replicas per color must be at least 1");
  const int n_switches = g.switch_count();

  // All replica sets for one color, as switch bitmasks in lexicographic
  // order of their member indices.
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(static_cast<size_t>(replicas));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    subsets.push_back(pick);
    int i = replicas - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n_switches - replicas + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < replicas; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  const double total = std::pow(static_cast<double>(subsets.size()), n_colors);
  if (total > static_cast<double>(guard)) {
    throw InputError("exhaustive placement would enumerate " +
                     std::to_string(static_cast<uint64_t>(total)) +
                     " candidates, above the guard of " + std::to_string(guard));
  }

  std::vector<size_t> digit(static_cast<size_t>(n_colors), 0);
  Placement best;
  double best_objective = std::numeric_limits<double>::infinity();
  while (true) {
    Placement p = Placement::Empty(mode, n_colors, n_switches);
    for (int c = 0; c < n_colors; ++c) {
      for (int s : subsets[digit[static_cast<size_t>(c)]]) p.colors[static_cast<size_t>(s)] |= 1u << c;
    }
    const double obj = EvaluatePlacement(g, p, commodities).objective;
    if (obj < best_objective) {
      best_objective = obj;
      best = std::move(p);
    }
    int c = n_colors - 1;
    while (c >= 0 && ++digit[static_cast<size_t>(c)] == subsets.size()) {
      digit[static_cast<size_t>(c)] = 0;
      --c;
    }
    if (c < 0) break;
  }
  return MakePlan(g, best, commodities, replicas);
}

}  // namespace distips
