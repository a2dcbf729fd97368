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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "distips/common/error.h"
#include "distips/common/random.h"
#include "distips/deploy/graph.h"
#include "distips/deploy/optimizer.h"
#include "distips/deploy/placement.h"
#include "json.hpp"
#include "oracles.h"

namespace distips {
namespace {

// Switches named by the given list, one host "h<name>" per switch.
NetworkGraph Build(const std::vector<std::string>& switches,
                   const std::vector<std::tuple<std::string, std::string, double>>& links) {
  NetworkGraph g;
  for (const auto& s : switches) g.AddSwitch(s);
  for (const auto& s : switches) g.AddHost("h" + s, s);
  for (const auto& [a, b, c] : links) g.AddLink(a, b, c);
  return g;
}

Placement Colors(const NetworkGraph& g, int n, std::map<std::string, std::vector<int>> map) {
  Placement p = Placement::Empty(PlacementMode::kWeakLearners, n, g.switch_count());
  for (const auto& [name, list] : map) {
    for (int c : list) p.colors[static_cast<size_t>(g.SwitchIndex(name))] |= 1u << c;
  }
  return p;
}

std::vector<std::string> Names(const NetworkGraph& g, const std::vector<int>& walk) {
  std::vector<std::string> out;
  for (int s : walk) out.push_back(g.switch_name(s));
  return out;
}

TEST(ShortestPath, Examples) {
  const NetworkGraph line = Build({"s", "a", "t"}, {{"s", "a", 1}, {"a", "t", 1}});
  const PathResult p = ShortestPath(line, 0, 2);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.cost, 2);

  const NetworkGraph two = Build({"s", "a", "b", "t"},
                                 {{"s", "a", 1}, {"a", "t", 2}, {"s", "b", 1}, {"b", "t", 1}});
  const PathResult q = ShortestPath(two, two.SwitchIndex("s"), two.SwitchIndex("t"));
  EXPECT_EQ(q.cost, 2);
  EXPECT_EQ(Names(two, q.walk), (std::vector<std::string>{"s", "b", "t"}));

  const NetworkGraph cut = Build({"s", "t"}, {});
  EXPECT_FALSE(ShortestPath(cut, 0, 1).feasible);
}

TEST(ShortestPath, TiesBreakTowardLowerNodeIndices) {
  const NetworkGraph g = Build({"s", "a", "b", "t"},
                               {{"s", "b", 1}, {"b", "t", 1}, {"s", "a", 1}, {"a", "t", 1}});
  EXPECT_EQ(Names(g, ShortestPath(g, 0, 3).walk), (std::vector<std::string>{"s", "a", "t"}));
}

TEST(ColoredPath, TwoColorsAlongTheLine) {
  const NetworkGraph g = Build({"s", "a", "b", "t"}, {{"s", "a", 1}, {"a", "b", 1}, {"b", "t", 1}});
  const PathResult p = ColoredShortestPath(g, Colors(g, 2, {{"a", {0}}, {"b", {1}}}), 0, 3);
  EXPECT_EQ(p.cost, 3);
  EXPECT_EQ(Names(g, p.walk), (std::vector<std::string>{"s", "a", "b", "t"}));
}

TEST(ColoredPath, AllColorsOnPathCostsNothingExtra) {
  const NetworkGraph g = Build({"s", "a", "t", "x"},
                               {{"s", "a", 1}, {"a", "t", 1}, {"s", "x", 1}, {"x", "t", 5}});
  const PathResult p = ColoredShortestPath(g, Colors(g, 3, {{"a", {0, 1, 2}}}), 0, 2);
  EXPECT_EQ(p.cost, ShortestPath(g, 0, 2).cost);
}

TEST(ColoredPath, DeadEndSpurIsWalkedInAndOut) {
  const NetworkGraph g = Build({"s", "m", "t", "r"}, {{"s", "m", 1}, {"m", "t", 1}, {"m", "r", 2}});
  const PathResult p = ColoredShortestPath(g, Colors(g, 1, {{"r", {0}}}), 0, 2);
  EXPECT_EQ(p.cost, 2 + 4);
  EXPECT_EQ(Names(g, p.walk), (std::vector<std::string>{"s", "m", "r", "m", "t"}));
}

TEST(ColoredPath, UnplacedOrUnreachableColorIsInfeasible) {
  const NetworkGraph g = Build({"s", "t", "z"}, {{"s", "t", 1}});
  EXPECT_FALSE(ColoredShortestPath(g, Colors(g, 2, {{"s", {0}}}), 0, 1).feasible);
  EXPECT_FALSE(ColoredShortestPath(g, Colors(g, 2, {{"s", {0}}, {"z", {1}}}), 0, 1).feasible);
}

TEST(ColoredPath, MatchesBothOraclesOnRandomGraphs) {
  Rng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(rng.UniformInt(2, 9));
    const NetworkGraph g = oracle::RandomConnectedGraph(rng, n, 0.3, 4);
    const int colors = static_cast<int>(rng.UniformInt(1, 3));
    const Placement p = oracle::RandomPlacement(rng, n, colors, static_cast<int>(rng.UniformInt(1, 2 < n ? 2 : 1)));
    const int src = static_cast<int>(rng.Index(static_cast<size_t>(n)));
    const int dst = static_cast<int>(rng.Index(static_cast<size_t>(n)));
    const PathResult got = ColoredShortestPath(g, p, src, dst);
    ASSERT_TRUE(got.feasible);
    const double walks = oracle::WalkEnumerationCost(g, p, src, dst, (colors + 1) * (n - 1));
    EXPECT_EQ(got.cost, walks) << "trial " << trial;
    EXPECT_EQ(got.cost, oracle::WaypointCost(g, p, src, dst)) << "trial " << trial;
    // A tighter edge budget can only make the enumeration worse.
    EXPECT_GE(oracle::WalkEnumerationCost(g, p, src, dst, 2 * n), got.cost);
    EXPECT_GE(got.cost, ShortestPath(g, src, dst).cost);
    // The returned walk is real and covers every color at its stated cost.
    double cost = 0;
    uint32_t seen = p.colors[static_cast<size_t>(got.walk.front())];
    for (size_t i = 1; i < got.walk.size(); ++i) {
      double link = INFINITY;
      for (const Edge& e : g.neighbors(got.walk[i - 1])) {
        if (e.to == got.walk[i]) link = std::min(link, e.cost);
      }
      cost += link;
      seen |= p.colors[static_cast<size_t>(got.walk[i])];
    }
    EXPECT_EQ(cost, got.cost);
    EXPECT_EQ(seen & p.full_mask(), p.full_mask());
    EXPECT_EQ(got.walk.front(), src);
    EXPECT_EQ(got.walk.back(), dst);
  }
}

TEST(ColoredPath, AddingAReplicaNeverHurts) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.UniformInt(3, 9));
    const NetworkGraph g = oracle::RandomConnectedGraph(rng, n, 0.25, 5);
    Placement p = oracle::RandomPlacement(rng, n, 3, 1);
    const int src = static_cast<int>(rng.Index(static_cast<size_t>(n)));
    const int dst = static_cast<int>(rng.Index(static_cast<size_t>(n)));
    const double before = ColoredShortestPath(g, p, src, dst).cost;
    p.colors[rng.Index(static_cast<size_t>(n))] |= 1u << rng.Index(3);
    EXPECT_LE(ColoredShortestPath(g, p, src, dst).cost, before);
  }
}

TEST(ColoredPath, StrongLearnerModeNeedsOneMarkedSwitch) {
  const NetworkGraph g = Build({"s", "a", "t", "x"}, {{"s", "a", 1}, {"a", "t", 1}, {"t", "x", 1}});
  Placement sl = Placement::Empty(PlacementMode::kStrongLearner, 1, 4);
  EXPECT_FALSE(ColoredShortestPath(g, sl, 0, 2).feasible);
  sl.colors[3] = 1;
  const PathResult p = ColoredShortestPath(g, sl, 0, 2);
  EXPECT_TRUE(p.feasible);
  EXPECT_EQ(p.cost, 4);
  EXPECT_THROW(Placement::Empty(PlacementMode::kStrongLearner, 3, 4), InputError);
}

TEST(Evaluate, CoverageAndPenalty) {
  const NetworkGraph g = Build({"a", "b", "c", "z"}, {{"a", "b", 1}, {"b", "c", 1}});
  const Placement p = Colors(g, 1, {{"b", {0}}});
  const std::vector<Commodity> ok = {{"ha", "hc", 1}, {"hc", "ha", 1}};
  const PlacementEvaluation all = EvaluatePlacement(g, p, ok);
  EXPECT_EQ(all.coverage, 1.0);
  EXPECT_EQ(all.objective, 4);

  std::vector<Commodity> four = {{"ha", "hc", 1}, {"hc", "ha", 1}, {"ha", "hb", 2}, {"ha", "hz", 1}};
  const PlacementEvaluation partial = EvaluatePlacement(g, p, four);
  EXPECT_EQ(partial.coverage, 0.75);
  EXPECT_EQ(InfeasibilityPenalty(g), 1e6 * 1 * 4);
  EXPECT_EQ(partial.objective, 2 + 2 + 2 * 1 + InfeasibilityPenalty(g));

  const PlacementEvaluation none = EvaluatePlacement(g, p, {});
  EXPECT_EQ(none.objective, 0);
  EXPECT_EQ(none.coverage, 1.0);
}

TEST(Stretch, MeanOfPerCommodityPercentages) {
  DeploymentPlan plan;
  plan.routes.push_back({{"x", "y", 1}, {true, {0, 1}, 6}, 5});
  plan.routes.push_back({{"x", "z", 1}, {true, {0, 1}, 5}, 5});
  EXPECT_DOUBLE_EQ(StretchOverhead(plan), 10.0);
  plan.routes.push_back({{"x", "x", 1}, {true, {0}, 0}, 0});  // src = dst, skipped
  EXPECT_DOUBLE_EQ(StretchOverhead(plan), 10.0);
  DeploymentPlan flat;
  flat.routes.push_back({{"x", "y", 1}, {true, {0, 1}, 5}, 5});
  EXPECT_EQ(StretchOverhead(flat), 0.0);
}

TEST(BruteForce, LineOfFourPutsBothColorsOnPath) {
  const NetworkGraph g = Build({"a", "b", "c", "d"}, {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}});
  const DeploymentPlan plan =
      BruteForcePlacement(g, {{"ha", "hd", 1}}, 2, 1, PlacementMode::kWeakLearners);
  EXPECT_EQ(plan.objective, 3);
  EXPECT_EQ(plan.coverage, 1.0);
  EXPECT_EQ(plan.stretch_pct, 0.0);
}

TEST(BruteForce, DisconnectedEndpointsAreInfeasibleAndGuardHolds) {
  const NetworkGraph g = Build({"a", "b"}, {});
  const DeploymentPlan plan =
      BruteForcePlacement(g, {{"ha", "hb", 1}}, 1, 1, PlacementMode::kWeakLearners);
  EXPECT_FALSE(plan.feasible());
  EXPECT_EQ(plan.coverage, 0.0);
  Rng rng(1);
  const NetworkGraph big = oracle::RandomConnectedGraph(rng, 10, 0.2, 1);
  EXPECT_THROW(BruteForcePlacement(big, {{"H0", "H1", 1}}, 3, 1, PlacementMode::kWeakLearners, 999),
               InputError);
}

TEST(BruteForce, AgreesWithIndependentEnumeration) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = static_cast<int>(rng.UniformInt(3, 6));
    const NetworkGraph g = oracle::RandomConnectedGraph(rng, n, 0.3, 3);
    std::vector<Commodity> cs;
    for (int i = 0; i < 3; ++i) {
      cs.push_back({"H" + std::to_string(rng.Index(static_cast<size_t>(n))),
                    "H" + std::to_string(rng.Index(static_cast<size_t>(n))), 1});
    }
    const DeploymentPlan plan = BruteForcePlacement(g, cs, 3, 1, PlacementMode::kWeakLearners);
    EXPECT_EQ(plan.objective, oracle::BruteForceObjective(g, cs, 3));
  }
}

TEST(Brkga, DecoderTakesLargestKeysPerColor) {
  // Color-major: keys[c * switches + s].
  const std::vector<double> keys = {0.1, 0.9, 0.5, /*color 1*/ 0.7, 0.2, 0.8};
  const Placement p = DecodeChromosome(keys, 3, 2, 1, PlacementMode::kWeakLearners);
  EXPECT_EQ(p.colors, (std::vector<uint32_t>{0, 0b01, 0b10}));
  const Placement two = DecodeChromosome(keys, 3, 2, 2, PlacementMode::kWeakLearners);
  EXPECT_EQ(two.colors, (std::vector<uint32_t>{0b10, 0b01, 0b11}));
}

TEST(Brkga, TrivialInstances) {
  const NetworkGraph one = Build({"a"}, {});
  BrkgaParams params;
  params.generations = 5;
  const DeploymentPlan p = BrkgaSolve(one, {{"ha", "ha", 1}}, 1, PlacementMode::kWeakLearners, params);
  EXPECT_EQ(p.coverage, 1.0);
  EXPECT_EQ(p.objective, 0);

  Rng rng(3);
  const NetworkGraph g = oracle::RandomConnectedGraph(rng, 6, 0.3, 3);
  const std::vector<Commodity> cs = {{"H0", "H5", 1}, {"H2", "H3", 2}};
  params.replicas_per_color = 6;
  const DeploymentPlan everywhere = BrkgaSolve(g, cs, 3, PlacementMode::kWeakLearners, params);
  EXPECT_EQ(everywhere.objective, ShortestPath(g, 0, 5).cost + 2 * ShortestPath(g, 2, 3).cost);
}

TEST(Brkga, DeterministicAndValidated) {
  Rng rng(9);
  const NetworkGraph g = oracle::RandomConnectedGraph(rng, 7, 0.3, 4);
  const std::vector<Commodity> cs = {{"H0", "H6", 1}, {"H3", "H1", 1}};
  BrkgaParams params;
  params.generations = 30;
  params.seed = 4;
  const DeploymentPlan a = BrkgaSolve(g, cs, 3, PlacementMode::kWeakLearners, params);
  const DeploymentPlan b = BrkgaSolve(g, cs, 3, PlacementMode::kWeakLearners, params);
  EXPECT_EQ(a.placement, b.placement);
  EXPECT_EQ(a.objective, b.objective);
  params.elite_fraction = 0.9;
  EXPECT_THROW(BrkgaSolve(g, cs, 3, PlacementMode::kWeakLearners, params), InputError);
}

TEST(Plan, JsonRoundTripAndValidation) {
  const NetworkGraph g = Build({"s", "a", "b", "t"}, {{"s", "a", 1}, {"a", "b", 1}, {"b", "t", 1}});
  const DeploymentPlan plan = MakePlan(g, Colors(g, 2, {{"a", {0}}, {"b", {1}}}), {{"hs", "ht", 1}}, 1);
  const DeploymentPlan back = PlanFromJson(g, PlanToJson(g, plan));
  EXPECT_EQ(back.placement, plan.placement);
  EXPECT_EQ(back.routes[0].path.walk, plan.routes[0].path.walk);
  EXPECT_EQ(back.objective, plan.objective);

  nlohmann::json doc = nlohmann::json::parse(PlanToJson(g, plan));
  doc["color_map"].erase("b");
  EXPECT_THROW(PlanFromJson(g, doc.dump()), InputError);  // walk misses color 1
  doc = nlohmann::json::parse(PlanToJson(g, plan));
  doc["paths"][0]["walk"] = {"s", "b", "t"};
  EXPECT_THROW(PlanFromJson(g, doc.dump()), InputError);  // no s-b link
  doc = nlohmann::json::parse(PlanToJson(g, plan));
  doc["color_map"]["zz"] = {0};
  EXPECT_THROW(PlanFromJson(g, doc.dump()), InputError);
}

TEST(Topology, RejectsBadInput) {
  EXPECT_THROW(TopologyFromJson("{\"switches\": []}"), InputError);
  EXPECT_THROW(TopologyFromJson(R"({"switches":["a"],"hosts":[],"links":[{"a":"a","b":"a","cost":1}]})"),
               InputError);
  EXPECT_THROW(TopologyFromJson(R"({"switches":["a","b"],"hosts":[],"links":[{"a":"a","b":"b","cost":0}]})"),
               InputError);
  EXPECT_THROW(TopologyFromJson("{"), InputError);
}

TEST(ReferenceTopology, BenignBaselineIsPinned) {
  const NetworkGraph g = LoadTopology(std::string(DISTIPS_DATA_DIR) + "/topology/reference.json");
  EXPECT_EQ(g.switch_count(), 10);
  std::ifstream in(std::string(DISTIPS_DATA_DIR) + "/topology/reference_benign_commodities.json");
  std::vector<Commodity> cs;
  for (const auto& c : nlohmann::json::parse(in)) cs.push_back({c.at("src"), c.at("dst"), 1.0});
  ASSERT_EQ(cs.size(), 4u);
  const DeploymentPlan plan = BrkgaSolve(g, cs, 3, PlacementMode::kWeakLearners, BrkgaParams{});
  EXPECT_EQ(plan.coverage, 1.0);
  EXPECT_EQ(plan.objective, 11.0);
  EXPECT_EQ(plan.stretch_pct, 0.0);
}

}  // namespace
}  // namespace distips
