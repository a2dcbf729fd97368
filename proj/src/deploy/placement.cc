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

#include "distips/deploy/placement.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>

#include "distips/common/error.h"
#include "json.hpp"

namespace distips {

std::string ModeName(PlacementMode mode) {
  return mode == PlacementMode::kWeakLearners ? "wl" : "sl";
}

PlacementMode ParseMode(const std::string& name) {
  if (name == "wl") return PlacementMode::kWeakLearners;
  if (name == "sl") return PlacementMode::kStrongLearner;
  throw InputError("mode must be 'wl' or 'sl', got '" + name + "'");
}

Placement Placement::Empty(PlacementMode mode, int n_colors, int switch_count) {
  if (n_colors < 1 || n_colors > 16) throw InputError("color count must be in [1, 16]");
  if (mode == PlacementMode::kStrongLearner && n_colors != 1) {
    throw InputError("strong-learner placements use a single pseudo-color");
  }
  return {mode, n_colors, std::vector<uint32_t>(static_cast<size_t>(switch_count), 0)};
}

bool Placement::AllColorsPlaced() const {
  uint32_t seen = 0;
  for (uint32_t c : colors) seen |= c;
  return (seen & full_mask()) == full_mask();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Label-setting search over states (switch, mask). With a single state per
// switch (mask ignored) this is plain Dijkstra.
PathResult LabelSetting(const NetworkGraph& g, std::span<const uint32_t> colors,
                        uint32_t full, int src, int dst) {
  const int n = g.switch_count();
  if (src < 0 || src >= n || dst < 0 || dst >= n) {
    throw InputError("path endpoint out of range");
  }
  const size_t masks = size_t{full} + 1;
  auto state = [masks](int v, uint32_t m) { return static_cast<size_t>(v) * masks + m; };
  std::vector<double> dist(static_cast<size_t>(n) * masks, kInf);
  std::vector<int64_t> pred(dist.size(), -1);
  std::vector<bool> done(dist.size(), false);

  using Item = std::tuple<double, int, uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  const uint32_t start_mask = colors[static_cast<size_t>(src)] & full;
  dist[state(src, start_mask)] = 0.0;
  queue.emplace(0.0, src, start_mask);
  int64_t target = -1;
  while (!queue.empty()) {
    auto [d, v, m] = queue.top();
    queue.pop();
    const size_t s = state(v, m);
    if (done[s]) continue;
    done[s] = true;
    if (v == dst && m == full) {
      target = static_cast<int64_t>(s);
      break;
    }
    for (const Edge& e : g.neighbors(v)) {
      const uint32_t nm = m | (colors[static_cast<size_t>(e.to)] & full);
      const size_t t = state(e.to, nm);
      const double nd = d + e.cost;
      if (done[t]) continue;
      if (nd < dist[t] ||
          (nd == dist[t] && static_cast<int64_t>(s) < pred[t])) {
        dist[t] = nd;
        pred[t] = static_cast<int64_t>(s);
        queue.emplace(nd, e.to, nm);
      }
    }
  }
  PathResult result;
  if (target < 0) return result;
  result.feasible = true;
  result.cost = dist[static_cast<size_t>(target)];
  for (int64_t s = target; s >= 0; s = pred[static_cast<size_t>(s)]) {
    result.walk.push_back(static_cast<int>(static_cast<size_t>(s) / masks));
  }
  std::reverse(result.walk.begin(), result.walk.end());
  return result;
}

}  // namespace

PathResult ShortestPath(const NetworkGraph& g, int src, int dst) {
  const std::vector<uint32_t> none(static_cast<size_t>(g.switch_count()), 0);
  return LabelSetting(g, none, 0, src, dst);
}

PathResult ColoredShortestPath(const NetworkGraph& g, const Placement& placement,
                               int src, int dst) {
  if (placement.colors.size() != static_cast<size_t>(g.switch_count())) {
    throw InputError("placement does not match the switch count");
  }
  if (!placement.AllColorsPlaced()) return {};
  return LabelSetting(g, placement.colors, placement.full_mask(), src, dst);
}

double InfeasibilityPenalty(const NetworkGraph& g) {
  return 1e6 * g.max_link_cost() * g.switch_count();
}

PlacementEvaluation EvaluatePlacement(const NetworkGraph& g,
                                      const Placement& placement,
                                      const std::vector<Commodity>& commodities) {
  PlacementEvaluation eval;
  if (commodities.empty()) return eval;
  size_t feasible = 0;
  for (const Commodity& c : commodities) {
    PathResult p = ColoredShortestPath(g, placement, g.host(c.src_host).attach,
                                       g.host(c.dst_host).attach);
    if (p.feasible) {
      eval.objective += c.demand * p.cost;
      ++feasible;
    } else {
      eval.objective += InfeasibilityPenalty(g);
    }
    eval.paths.push_back(std::move(p));
  }
  eval.coverage = static_cast<double>(feasible) / static_cast<double>(commodities.size());
  return eval;
}

DeploymentPlan MakePlan(const NetworkGraph& g, const Placement& placement,
                        const std::vector<Commodity>& commodities,
                        int replicas_per_color) {
  PlacementEvaluation eval = EvaluatePlacement(g, placement, commodities);
  DeploymentPlan plan;
  plan.placement = placement;
  plan.replicas_per_color = replicas_per_color;
  plan.objective = eval.objective;
  plan.coverage = eval.coverage;
  for (size_t i = 0; i < commodities.size(); ++i) {
    CommodityRoute route{commodities[i], std::move(eval.paths[i]), 0.0};
    route.shortest_cost = ShortestPath(g, g.host(commodities[i].src_host).attach,
                                       g.host(commodities[i].dst_host).attach)
                              .cost;
    plan.routes.push_back(std::move(route));
  }
  plan.stretch_pct = StretchOverhead(plan);
  return plan;
}

double StretchOverhead(const DeploymentPlan& plan) {
  double sum = 0.0;
  int counted = 0;
  for (const CommodityRoute& r : plan.routes) {
    if (!r.path.feasible || r.shortest_cost <= 0.0) continue;
    sum += (r.path.cost - r.shortest_cost) / r.shortest_cost * 100.0;
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / counted;
}

std::string PlanToJson(const NetworkGraph& g, const DeploymentPlan& plan) {
  using nlohmann::json;
  json doc;
  doc["mode"] = ModeName(plan.placement.mode);
  doc["n_colors"] = plan.placement.n_colors;
  doc["replicas"] = plan.replicas_per_color;
  json color_map = json::object();
  for (int s = 0; s < g.switch_count(); ++s) {
    const uint32_t mask = plan.placement.colors[static_cast<size_t>(s)];
    if (mask == 0) continue;
    json list = json::array();
    for (int c = 0; c < plan.placement.n_colors; ++c) {
      if ((mask >> c) & 1) list.push_back(c);
    }
    color_map[g.switch_name(s)] = std::move(list);
  }
  doc["color_map"] = std::move(color_map);
  json paths = json::array();
  for (const CommodityRoute& r : plan.routes) {
    json walk = json::array();
    for (int s : r.path.walk) walk.push_back(g.switch_name(s));
    paths.push_back({{"src", r.commodity.src_host},
                     {"dst", r.commodity.dst_host},
                     {"demand", r.commodity.demand},
                     {"walk", std::move(walk)},
                     {"cost", r.path.cost},
                     {"shortest_cost", r.shortest_cost},
                     {"feasible", r.path.feasible}});
  }
  doc["paths"] = std::move(paths);
  doc["objective"] = plan.objective;
  doc["coverage"] = plan.coverage;
  doc["stretch_pct"] = plan.stretch_pct;
  return doc.dump(1) + "\n";
}

DeploymentPlan PlanFromJson(const NetworkGraph& g, const std::string& text) {
  using nlohmann::json;
  DeploymentPlan plan;
  try {
    const json doc = json::parse(text);
    const PlacementMode mode = ParseMode(doc.at("mode").get<std::string>());
    plan.placement = Placement::Empty(mode, doc.at("n_colors").get<int>(), g.switch_count());
    plan.replicas_per_color = doc.value("replicas", 1);
    for (const auto& [name, list] : doc.at("color_map").items()) {
      uint32_t& mask = plan.placement.colors[static_cast<size_t>(g.SwitchIndex(name))];
      for (const json& c : list) {
        const int color = c.get<int>();
        if (color < 0 || color >= plan.placement.n_colors) {
          throw InputError("plan: color " + std::to_string(color) + " out of range");
        }
        mask |= 1u << color;
      }
    }
    for (const json& p : doc.at("paths")) {
      CommodityRoute r;
      r.commodity = {p.at("src").get<std::string>(), p.at("dst").get<std::string>(),
                     p.value("demand", 1.0)};
      r.path.feasible = p.at("feasible").get<bool>();
      r.path.cost = p.at("cost").get<double>();
      r.shortest_cost = p.at("shortest_cost").get<double>();
      for (const json& s : p.at("walk")) r.path.walk.push_back(g.SwitchIndex(s.get<std::string>()));
      plan.routes.push_back(std::move(r));
    }
    plan.objective = doc.at("objective").get<double>();
    plan.coverage = doc.at("coverage").get<double>();
    plan.stretch_pct = doc.at("stretch_pct").get<double>();
  } catch (const json::exception& e) {
    throw InputError(std::string("plan: ") + e.what());
  }

  for (const CommodityRoute& r : plan.routes) {
    if (!r.path.feasible) continue;
    const auto& walk = r.path.walk;
    const std::string label = r.commodity.src_host + "->" + r.commodity.dst_host;
    if (walk.empty() || walk.front() != g.host(r.commodity.src_host).attach ||
        walk.back() != g.host(r.commodity.dst_host).attach) {
      throw InputError("plan: walk endpoints of " + label + " do not match host attachments");
    }
    uint32_t seen = plan.placement.colors[static_cast<size_t>(walk[0])];
    for (size_t i = 1; i < walk.size(); ++i) {
      const auto nbrs = g.neighbors(walk[i - 1]);
      if (std::none_of(nbrs.begin(), nbrs.end(),
                       [&](const Edge& e) { return e.to == walk[i]; })) {
        throw InputError("plan: walk of " + label + " uses a missing link");
      }
      seen |= plan.placement.colors[static_cast<size_t>(walk[i])];
    }
    if ((seen & plan.placement.full_mask()) != plan.placement.full_mask()) {
      throw InputError("plan: walk of " + label + " misses a color");
    }
  }
  return plan;
}

void SavePlan(const NetworkGraph& g, const DeploymentPlan& plan,
              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << PlanToJson(g, plan);
}

DeploymentPlan LoadPlan(const NetworkGraph& g, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open plan " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return PlanFromJson(g, text.str());
}

}  // namespace distips
