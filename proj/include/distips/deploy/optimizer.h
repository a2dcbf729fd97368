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

#ifndef DISTIPS_DEPLOY_OPTIMIZER_H_
#define DISTIPS_DEPLOY_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "distips/deploy/placement.h"

namespace distips {

struct BrkgaParams {
  int population = 100;
  double elite_fraction = 0.2;
  double mutant_fraction = 0.15;
  double inherit_prob = 0.7;  // chance a gene comes from the elite parent
  int generations = 200;
  uint64_t seed = 1;
  int replicas_per_color = 1;

  // Throws InputError unless fractions are in (0, 1) with
  // elite + mutant < 1, population >= 2, generations >= 0, replicas >= 1.
  void Validate() const;
};

// Keys are laid out color-major: keys[c * switch_count + s]. For each
// color the `replicas` switches with the largest keys host it (ties go to
// the lower switch index).
Placement DecodeChromosome(std::span<const double> keys, int switch_count,
                           int n_colors, int replicas, PlacementMode mode);

// Biased random-key GA minimizing EvaluatePlacement's objective. Returns
// the best plan seen; check plan.feasible() for coverage.
DeploymentPlan BrkgaSolve(const NetworkGraph& g,
                          const std::vector<Commodity>& commodities,
                          int n_colors, PlacementMode mode,
                          const BrkgaParams& params);

// Exhaustive enumeration of every choice of `replicas` switches per color.
// Throws InputError when C(|S|, R)^N exceeds `guard`. Ties keep the first
// placement in enumeration order.
DeploymentPlan BruteForcePlacement(const NetworkGraph& g,
                                   const std::vector<Commodity>& commodities,
                                   int n_colors, int replicas,
                                   PlacementMode mode,
                                   uint64_t guard = 1'000'000);

}  // namespace distips

#endif  // DISTIPS_DEPLOY_OPTIMIZER_H_
