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

#ifndef DISTIPS_DEPLOY_PLACEMENT_H_
#define DISTIPS_DEPLOY_PLACEMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "distips/deploy/graph.h"

namespace distips {

// kWeakLearners: color c is weak learner c; a route must visit every color.
// kStrongLearner: a single pseudo-color marks switches hosting the whole
// ensemble; a route must visit at least one of them.
enum class PlacementMode { kWeakLearners, kStrongLearner };

std::string ModeName(PlacementMode mode);  // "wl" / "sl"
PlacementMode ParseMode(const std::string& name);

struct Placement {
  PlacementMode mode = PlacementMode::kWeakLearners;
  int n_colors = 1;
  std::vector<uint32_t> colors;  // per switch, bit c set = hosts color c

  static Placement Empty(PlacementMode mode, int n_colors, int switch_count);

  uint32_t full_mask() const { return n_colors >= 32 ? ~0u : (1u << n_colors) - 1; }
  // Every color is hosted somewhere.
  bool AllColorsPlaced() const;
  bool operator==(const Placement&) const = default;
};

struct PathResult {
  bool feasible = false;
  std::vector<int> walk;  // switch indices, source first
  double cost = 0.0;
};

// Dijkstra; among equal-cost predecessors the lower switch index wins.
PathResult ShortestPath(const NetworkGraph& g, int src, int dst);

// Exact minimum-cost walk from src to dst whose visited switches together
// host every color. Label-setting over (switch, collected-color-set)
// states, so revisiting a switch is allowed. Infeasible when some color is
// unplaced or unreachable.
PathResult ColoredShortestPath(const NetworkGraph& g, const Placement& placement,
                               int src, int dst);

struct Commodity {
  std::string src_host;
  std::string dst_host;
  double demand = 1.0;
};

// Cost charged per infeasible commodity: 1e6 * max link cost * |V|.
double InfeasibilityPenalty(const NetworkGraph& g);

struct PlacementEvaluation {
  double objective = 0.0;
  double coverage = 1.0;  // 1.0 for an empty commodity set
  std::vector<PathResult> paths;
};

// objective = sum of demand-weighted colored costs of feasible commodities
// plus one penalty per infeasible commodity.
PlacementEvaluation EvaluatePlacement(const NetworkGraph& g,
                                      const Placement& placement,
                                      const std::vector<Commodity>& commodities);

struct CommodityRoute {
  Commodity commodity;
  PathResult path;
  double shortest_cost = 0.0;
};

struct DeploymentPlan {
  Placement placement;
  int replicas_per_color = 1;
  std::vector<CommodityRoute> routes;
  double objective = 0.0;
  double coverage = 1.0;
  double stretch_pct = 0.0;

  bool feasible() const { return coverage >= 1.0; }
};

DeploymentPlan MakePlan(const NetworkGraph& g, const Placement& placement,
                        const std::vector<Commodity>& commodities,
                        int replicas_per_color);

// Mean over routes of (colored - shortest) / shortest * 100. Infeasible
// routes and routes with zero shortest cost (src == dst) are skipped.
double StretchOverhead(const DeploymentPlan& plan);

// Plan JSON: {mode, n_colors, replicas, color_map: {switch: [colors]},
// paths: [{src, dst, demand, walk, cost, shortest_cost, feasible}],
// objective, coverage, stretch_pct}.
std::string PlanToJson(const NetworkGraph& g, const DeploymentPlan& plan);
// Re-validates every stored walk against the graph and the placement.
DeploymentPlan PlanFromJson(const NetworkGraph& g, const std::string& text);
void SavePlan(const NetworkGraph& g, const DeploymentPlan& plan,
              const std::filesystem::path& path);
DeploymentPlan LoadPlan(const NetworkGraph& g, const std::filesystem::path& path);

}  // namespace distips

#endif  // DISTIPS_DEPLOY_PLACEMENT_H_
