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

// Drives the built `distips` binary and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "distips/common/random.h"
#include "distips/deploy/graph.h"
#include "distips/deploy/placement.h"
#include "distips/ensemble/bundle.h"
#include "json.hpp"
#include "oracles.h"

namespace distips {
namespace {

namespace fs = std::filesystem;
const std::string kData = DISTIPS_DATA_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("distips_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of `distips <args>`; stderr lands in err().
  int Run(const std::string& args) {
    const std::string cmd = std::string(DISTIPS_CLI) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Slurp(const fs::path& p) const {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::string err() const { return Slurp(dir_ / "stderr.txt"); }
  std::string out() const { return Slurp(dir_ / "stdout.txt"); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void WriteManifest(const std::string& name, const std::string& wl_plan, double duration,
                     const std::string& extra = "") {
    std::ofstream(Path(name)) << "{\"topology\":\"" << kData << "/topology/reference.json\","
                              << "\"wl_plan\":\"" << wl_plan << "\","
                              << "\"sl_plan\":\"" << kData << "/plans/reference_sl.json\","
                              << "\"bundle\":\"" << kData << "/models/traffic_n3_d7.json\","
                              << "\"cost_model\":\"" << kData << "/cost_model.json\","
                              << "\"traffic\":\"" << kData << "/traffic/medium_ddos.json\","
                              << "\"seed\":7,\"duration_s\":" << duration << extra << "}";
  }

  fs::path dir_;
};

TEST_F(Cli, TrainWritesABundleOfThreeLearners) {
  ASSERT_EQ(Run("train --synthetic --n 3 --depth 7 --seed 1 --rows 600 -o " + Path("m.json")), 0) << err();
  const StrongLearner m = LoadBundle(Path("m.json"));
  EXPECT_EQ(m.size(), 3);
  EXPECT_NE(out().find("accuracy"), std::string::npos);
}

TEST_F(Cli, TrainInputErrorsExitTwoWithoutOutput) {
  EXPECT_EQ(Run("train --dataset " + Path("missing.csv") + " -o " + Path("m.json")), 2);
  EXPECT_FALSE(fs::exists(Path("m.json")));
  EXPECT_EQ(Run("train --synthetic --n 0 -o " + Path("m.json")), 2);
  EXPECT_EQ(Run("train --synthetic --dataset x.csv -o " + Path("m.json")), 2);
  std::ofstream(Path("bad.csv")) << "f0,label\n1.0,7\n";
  EXPECT_EQ(Run("train --dataset " + Path("bad.csv") + " -o " + Path("m.json")), 2);
  EXPECT_FALSE(fs::exists(Path("m.json")));
  EXPECT_FALSE(fs::exists(Path("m.json.partial")));
}

TEST_F(Cli, PredictWritesOneRowPerSample) {
  std::ofstream csv(Path("d.csv"));
  csv << "f0,f1,label\n";
  for (int i = 0; i < 40; ++i) csv << i << "," << (i % 7) << "," << (i >= 20) << "\n";
  csv.close();
  ASSERT_EQ(Run("train --dataset " + Path("d.csv") + " --n 1 --ratio 1 -o " + Path("m.json")), 0) << err();
  ASSERT_EQ(Run("predict --bundle " + Path("m.json") + " --dataset " + Path("d.csv") + " -o " + Path("p.csv")), 0)
      << err();
  std::istringstream lines(Slurp(Path("p.csv")));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "row,prediction");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 40);
}

TEST_F(Cli, OptimizeReferenceCoversAllColors) {
  ASSERT_EQ(Run("optimize --topology " + kData + "/topology/reference.json --commodities " + kData +
                "/topology/reference_benign_commodities.json --n 3 --seed 1 -o " + Path("plan.json")),
            0)
      << err();
  const NetworkGraph g = LoadTopology(kData + "/topology/reference.json");
  // LoadPlan re-checks that every walk visits all three colors.
  const DeploymentPlan plan = LoadPlan(g, Path("plan.json"));
  EXPECT_EQ(plan.coverage, 1.0);
  EXPECT_LE(plan.stretch_pct, 10.0);

  ASSERT_EQ(Run("optimize --topology " + kData + "/topology/reference.json --commodities " + kData +
                "/topology/reference_benign_commodities.json --mode sl -o " + Path("sl.json")),
            0)
      << err();
  const DeploymentPlan sl = LoadPlan(g, Path("sl.json"));
  for (const CommodityRoute& r : sl.routes) {
    bool hosted = false;
    for (int s : r.path.walk) hosted |= sl.placement.colors[static_cast<size_t>(s)] != 0;
    EXPECT_TRUE(hosted);
  }
}

TEST_F(Cli, ExactIsNoWorseThanBrkga) {
  Rng rng(77);
  const NetworkGraph g = oracle::RandomConnectedGraph(rng, 8, 0.2, 3);
  nlohmann::json topo;
  topo["switches"] = nlohmann::json::array();
  topo["hosts"] = nlohmann::json::array();
  topo["links"] = nlohmann::json::array();
  for (int s = 0; s < g.switch_count(); ++s) {
    topo["switches"].push_back(g.switch_name(s));
    topo["hosts"].push_back({{"id", "H" + std::to_string(s)}, {"attach", g.switch_name(s)}});
    for (const Edge& e : g.neighbors(s)) {
      if (e.to > s) topo["links"].push_back({{"a", g.switch_name(s)}, {"b", g.switch_name(e.to)}, {"cost", e.cost}});
    }
  }
  std::ofstream(Path("topo.json")) << topo.dump();
  std::ofstream(Path("c.json")) << R"([{"src":"H0","dst":"H7"},{"src":"H3","dst":"H5"},{"src":"H6","dst":"H1"}])";
  const std::string base = "optimize --topology " + Path("topo.json") + " --commodities " + Path("c.json") + " --n 3 ";
  ASSERT_EQ(Run(base + "--generations 20 -o " + Path("b.json")), 0) << err();
  ASSERT_EQ(Run(base + "--exact -o " + Path("e.json")), 0) << err();
  const NetworkGraph loaded = LoadTopology(Path("topo.json"));
  EXPECT_LE(LoadPlan(loaded, Path("e.json")).objective, LoadPlan(loaded, Path("b.json")).objective);
}

TEST_F(Cli, InfeasiblePlacementExitsThreeAndNamesColors) {
  std::ofstream(Path("topo.json"))
      << R"({"switches":["A","B","C"],"hosts":[{"id":"h1","attach":"A"},{"id":"h2","attach":"B"}],)"
      << R"("links":[{"a":"A","b":"B","cost":1}]})";
  std::ofstream(Path("c.json")) << R"([{"src":"h1","dst":"h2"}])";
  std::ofstream(Path("p.json")) << R"({"A":[0],"C":[1]})";
  EXPECT_EQ(Run("optimize --topology " + Path("topo.json") + " --commodities " + Path("c.json") +
                " --n 2 --placement " + Path("p.json") + " -o " + Path("out.json")),
            3);
  EXPECT_NE(err().find("unreachable colors"), std::string::npos) << err();
  EXPECT_FALSE(fs::exists(Path("out.json")));
}

TEST_F(Cli, SimulateWithMissingPlanExitsTwo) {
  WriteManifest("m.json", Path("nope.json"), 5);
  EXPECT_EQ(Run("simulate --manifest " + Path("m.json") + " -o " + Path("metrics.csv")), 2);
  EXPECT_FALSE(fs::exists(Path("metrics.csv")));
  EXPECT_EQ(Run("simulate --manifest " + Path("absent.json") + " -o " + Path("metrics.csv")), 2);
}

TEST_F(Cli, SweepHasTwentyRowsAndRepeatsByteForByte) {
  WriteManifest("m.json", kData + "/plans/reference_wl.json", 4, ",\"sweep_attack\":\"100:1000:100\"");
  ASSERT_EQ(Run("simulate --manifest " + Path("m.json") + " -o " + Path("a.csv")), 0) << err();
  ASSERT_EQ(Run("simulate --manifest " + Path("m.json") + " --workers 1 -o " + Path("b.csv")), 0) << err();
  const std::string a = Slurp(Path("a.csv"));
  EXPECT_EQ(a, Slurp(Path("b.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 21);
}

TEST_F(Cli, EventLogAndTrace) {
  WriteManifest("m.json", kData + "/plans/reference_wl.json", 2, ",\"attack_rate\":300");
  ASSERT_EQ(Run("simulate --manifest " + Path("m.json") + " --mode wl --event-log " + Path("ev.csv") +
                " -o " + Path("metrics.csv")),
            0)
      << err();
  EXPECT_EQ(Slurp(Path("ev.csv")).rfind("time_us,event,switch,flow,packet,cycles\n", 0), 0u);
  ASSERT_EQ(Run("trace --topology " + kData + "/topology/reference.json --traffic " + kData +
                "/traffic/medium_ddos.json --seed 3 -o " + Path("t.csv")),
            0)
      << err();
  EXPECT_EQ(Slurp(Path("t.csv")).rfind("ts,src_ip,dst_ip,src_port,dst_port,proto,size,label\n", 0), 0u);
}

TEST_F(Cli, ShippedChainVectorsAreReproducible) {
  ASSERT_EQ(Run("chain-vectors --seed 1 -o " + Path("v.csv")), 0) << err();
  EXPECT_EQ(Slurp(Path("v.csv")), Slurp(kData + "/chain_header_vectors.csv"));
}

}  // namespace
}  // namespace distips
