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

// distips: train, optimize, simulate and inspect the distributed IPS.
// Exit codes: 0 ok, 2 input error, 3 infeasible, 4 invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distips/chain/chain_header.h"
#include "distips/common/error.h"
#include "distips/common/random.h"
#include "distips/deploy/graph.h"
#include "distips/deploy/optimizer.h"
#include "distips/deploy/placement.h"
#include "distips/ensemble/bundle.h"
#include "distips/ensemble/dataset.h"
#include "distips/ensemble/ensemble.h"
#include "distips/ensemble/metrics.h"
#include "distips/flow/trace.h"
#include "distips/netsim/cost_model.h"
#include "distips/netsim/manifest.h"
#include "distips/netsim/simulator.h"
#include "distips/netsim/sweep.h"
#include "distips/netsim/traffic.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace distips;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInvariant = 4;

// Writes to a sibling temp file and renames on success, so a failed command
// never leaves a partial output behind.
class AtomicOutput {
 public:
  explicit AtomicOutput(fs::path path)
      : path_(std::move(path)), tmp_(path_.string() + ".partial") {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw InputError("cannot write " + path_.string());
  }
  ~AtomicOutput() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  AtomicOutput(const AtomicOutput&) = delete;
  AtomicOutput& operator=(const AtomicOutput&) = delete;

  std::ostream& stream() { return out_; }
  void Commit() {
    out_.close();
    if (!out_) throw InputError("failed writing " + path_.string());
    fs::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  fs::path path_;
  fs::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void WriteText(const fs::path& path, const std::string& text) {
  AtomicOutput out(path);
  out.stream() << text;
  out.Commit();
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Commodity> LoadCommodities(const fs::path& path) {
  using nlohmann::json;
  std::vector<Commodity> out;
  try {
    const json doc = json::parse(ReadText(path));
    const json& list = doc.is_object() ? doc.at("commodities") : doc;
    for (const json& c : list) {
      out.push_back({c.at("src").get<std::string>(), c.at("dst").get<std::string>(),
                     c.value("demand", 1.0)});
    }
  } catch (const json::exception& e) {
    throw InputError("commodities " + path.string() + ": " + e.what());
  }
  return out;
}

// {"S7": [0], ...}: a fixed placement to route instead of searching.
Placement LoadColorMap(const NetworkGraph& g, const fs::path& path, PlacementMode mode,
                       int n_colors) {
  using nlohmann::json;
  Placement placement = Placement::Empty(mode, n_colors, g.switch_count());
  try {
    const json doc = json::parse(ReadText(path));
    for (const auto& [name, list] : doc.items()) {
      for (const json& c : list) {
        const int color = c.get<int>();
        if (color < 0 || color >= n_colors) {
          throw InputError("placement: color " + std::to_string(color) + " out of range");
        }
        placement.colors[static_cast<size_t>(g.SwitchIndex(name))] |= 1u << color;
      }
    }
  } catch (const json::exception& e) {
    throw InputError("placement " + path.string() + ": " + e.what());
  }
  return placement;
}

// Colors that an infeasible commodity cannot collect: those hosted only
// outside the switches reachable from its source.
std::string DiagnoseInfeasible(const NetworkGraph& g, const DeploymentPlan& plan) {
  std::ostringstream msg;
  for (const CommodityRoute& r : plan.routes) {
    if (r.path.feasible) continue;
    const int src = g.host(r.commodity.src_host).attach;
    std::vector<bool> seen(static_cast<size_t>(g.switch_count()), false);
    std::queue<int> frontier;
    frontier.push(src);
    seen[static_cast<size_t>(src)] = true;
    while (!frontier.empty()) {
      const int s = frontier.front();
      frontier.pop();
      for (const Edge& e : g.neighbors(s)) {
        if (!seen[static_cast<size_t>(e.to)]) {
          seen[static_cast<size_t>(e.to)] = true;
          frontier.push(e.to);
        }
      }
    }
    uint32_t reachable = 0;
    for (int s = 0; s < g.switch_count(); ++s) {
      if (seen[static_cast<size_t>(s)]) reachable |= plan.placement.colors[static_cast<size_t>(s)];
    }
    msg << "  " << r.commodity.src_host << "->" << r.commodity.dst_host;
    if (!seen[static_cast<size_t>(g.host(r.commodity.dst_host).attach)]) {
      msg << ": destination unreachable";
    }
    msg << ": unreachable colors [";
    const char* sep = "";
    for (int c = 0; c < plan.placement.n_colors; ++c) {
      if (!((reachable >> c) & 1)) {
        msg << sep << c;
        sep = ",";
      }
    }
    msg << "]\n";
  }
  return msg.str();
}

struct TrainArgs {
  bool synthetic = false;
  std::string separation = "easy";
  std::string dataset;
  bool from_traffic = false;
  size_t rows = 6000;
  int n = 3;
  int depth = 7;
  double ratio = 0.33;
  uint64_t seed = 1;
  std::string out;
};

int RunTrain(const TrainArgs& a) {
  LabeledDataset data;
  if (a.synthetic) {
    SyntheticOptions opt;
    opt.rows = a.rows;
    opt.separation = ParseSeparation(a.separation);
    opt.seed = a.seed;
    data = MakeSyntheticDataset(opt);
  } else if (a.from_traffic) {
    TrafficDatasetOptions opt;
    opt.flows = a.rows;
    opt.seed = a.seed;
    data = MakeTrafficDataset(FeatureRegistry(), opt);
  } else {
    data = LoadDatasetCsv(a.dataset);
  }
  const DatasetSplit split = TrainTestSplit(data, 0.3, DeriveSeed(a.seed, 1));
  EnsembleOptions opt;
  opt.n_learners = a.n;
  opt.subsample_ratio = a.ratio;
  opt.max_depth = a.depth;
  opt.seed = a.seed;
  const StrongLearner model = BuildDecomposedEnsemble(split.train, opt);
  std::cout << "train rows " << split.train.size() << ", holdout rows "
            << split.test.size() << "\n"
            << FormatReport(EvaluateModel(model, split.test)) << "\n";
  WriteText(a.out, BundleToJson(model));
  return 0;
}

int RunPredict(const std::string& bundle, const std::string& dataset,
               const std::string& out_path) {
  const StrongLearner model = LoadBundle(bundle);
  const LabeledDataset data = LoadDatasetCsv(dataset);
  if (data.feature_count() != model.feature_count) {
    throw InputError("dataset has " + std::to_string(data.feature_count()) +
                     " features, bundle expects " + std::to_string(model.feature_count));
  }
  AtomicOutput out(out_path);
  out.stream() << "row,prediction\n";
  for (size_t i = 0; i < data.size(); ++i) {
    out.stream() << i << ',' << PredictMajority(model, data.row(i)) << '\n';
  }
  out.Commit();
  return 0;
}

struct OptimizeArgs {
  std::string topology;
  std::string commodities;
  std::string traffic;
  std::string placement;
  int n = 3;
  int r = 1;
  std::string mode = "wl";
  BrkgaParams brkga;
  bool exact = false;
  std::string out;
};

int RunOptimize(OptimizeArgs a) {
  const NetworkGraph g = LoadTopology(a.topology);
  const std::vector<Commodity> commodities =
      a.commodities.empty() ? CommoditiesFromTraffic(LoadTrafficSpec(a.traffic, 0))
                            : LoadCommodities(a.commodities);
  const PlacementMode mode = ParseMode(a.mode);
  const int colors = mode == PlacementMode::kStrongLearner ? 1 : a.n;
  a.brkga.replicas_per_color = a.r;
  DeploymentPlan plan;
  if (!a.placement.empty()) {
    plan = MakePlan(g, LoadColorMap(g, a.placement, mode, colors), commodities, a.r);
  } else if (a.exact) {
    plan = BruteForcePlacement(g, commodities, colors, a.r, mode);
  } else {
    plan = BrkgaSolve(g, commodities, colors, mode, a.brkga);
  }
  std::printf("mode %s colors %d replicas %d objective %.6f coverage %.6f stretch_pct %.6f\n",
              ModeName(mode).c_str(), colors, a.r, plan.objective, plan.coverage,
              plan.stretch_pct);
  if (!plan.feasible()) {
    std::cerr << "infeasible plan:\n" << DiagnoseInfeasible(g, plan);
    return kExitInfeasible;
  }
  SavePlan(g, plan, a.out);
  return 0;
}

struct SimulateArgs {
  std::string manifest;
  std::string mode;
  std::string sweep;
  std::string event_log;
  std::string out;
  unsigned workers = 0;
};

int RunSimulate(const SimulateArgs& a) {
  const ExperimentManifest m = LoadManifest(a.manifest);
  const NetworkGraph g = LoadTopology(m.topology);
  const StrongLearner model = LoadBundle(m.bundle);
  const CostModel cost = LoadCostModel(m.cost_model);
  TrafficSpec traffic = LoadTrafficSpec(m.traffic, m.seed);
  const DeploymentPlan wl = LoadPlan(g, m.wl_plan);
  const DeploymentPlan sl = LoadPlan(g, m.sl_plan);
  const std::string mode = a.mode.empty() ? m.mode : a.mode;
  const std::string sweep = !a.sweep.empty() ? a.sweep : m.sweep_attack.value_or("");

  if (!sweep.empty()) {
    if (!a.event_log.empty()) throw InputError("--event-log needs a single run, not a sweep");
    SweepOptions so;
    so.duration_s = m.duration_s;
    so.workers = a.workers;
    const auto rows = CompareDeployments(g, wl, sl, model, ParseRateRange(sweep),
                                         traffic, cost, so);
    AtomicOutput out(a.out);
    WriteMetricsHeader(out.stream());
    for (const SweepRow& row : rows) {
      if (mode != "both" && ModeName(row.report.mode) != mode) continue;
      WriteMetricsRow(out.stream(), row.attack_rate, row.report);
    }
    out.Commit();
    return 0;
  }

  if (m.attack_rate) traffic = WithAttackRate(traffic, *m.attack_rate);
  const double rate = m.attack_rate.value_or(0.0);
  const std::vector<PacketRecord> packets = GenerateTraffic(traffic, g);
  std::optional<AtomicOutput> log_file;
  std::optional<EventLog> log;
  if (!a.event_log.empty()) {
    if (mode == "both") throw InputError("--event-log needs --mode wl or sl");
    log_file.emplace(a.event_log);
    log.emplace(log_file->stream());
  }
  AtomicOutput out(a.out);
  WriteMetricsHeader(out.stream());
  for (const DeploymentPlan* plan : {&wl, &sl}) {
    if (mode != "both" && ModeName(plan->placement.mode) != mode) continue;
    ScenarioOptions so;
    so.duration_s = m.duration_s;
    so.seed = m.seed;
    so.log = log ? &*log : nullptr;
    const MetricsReport r = RunScenario(g, *plan, model, packets, cost, so);
    if (r.injected != r.delivered + r.dropped + r.suppressed) {
      throw InvariantError("packet conservation violated");
    }
    WriteMetricsRow(out.stream(), rate, r);
  }
  out.Commit();
  if (log_file) log_file->Commit();
  return 0;
}

int RunTrace(const std::string& topology, const std::string& traffic_path, uint64_t seed,
             std::optional<double> attack_rate, const std::string& out_path) {
  const NetworkGraph g = LoadTopology(topology);
  TrafficSpec spec = LoadTrafficSpec(traffic_path, seed);
  if (attack_rate) spec = WithAttackRate(spec, *attack_rate);
  AtomicOutput out(out_path);
  WriteTrace(out.stream(), GenerateTraffic(spec, g));
  out.Commit();
  return 0;
}

std::string HexBytes(const std::vector<uint8_t>& bytes) {
  std::string s;
  char buf[3];
  for (uint8_t b : bytes) {
    std::snprintf(buf, sizeof buf, "%02X", b);
    s += buf;
  }
  return s;
}

std::string Bits(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += static_cast<char>('0' + x);
  return s;
}

// Conformance vectors: every header for N <= 3 in slot order, plus seeded
// random ones up to N = 16.
int RunChainVectors(const std::string& out_path, uint64_t seed) {
  AtomicOutput out(out_path);
  out.stream() << "n,ids,outputs,mask,hex\n";
  auto emit = [&](const ChainHeader& h) {
    std::vector<int> outs;
    std::vector<int> mask;
    std::string ids;
    for (int i = 0; i < h.n(); ++i) {
      if (i) ids += ' ';
      ids += std::to_string(h.ids()[static_cast<size_t>(i)]);
      outs.push_back(static_cast<int>((h.outputs() >> i) & 1));
      mask.push_back(static_cast<int>((h.filled() >> i) & 1));
    }
    out.stream() << h.n() << ',' << ids << ',' << Bits(outs) << ',' << Bits(mask) << ','
                 << HexBytes(EncodeHeader(h)) << '\n';
  };
  for (int n = 1; n <= 3; ++n) {
    std::vector<uint32_t> ids(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = static_cast<uint32_t>(i);
    for (uint64_t mask = 0; mask < (1u << n); ++mask) {
      for (uint64_t outs = 0; outs < (1u << n); ++outs) {
        if (outs & ~mask) continue;
        emit(ChainHeader(n, ids, outs, mask));
      }
    }
  }
  Rng rng(seed);
  for (int k = 0; k < 64; ++k) {
    const int n = 4 + static_cast<int>(rng.Index(13));
    const int width = ChainHeader::IdWidth(n);
    std::vector<uint32_t> ids(static_cast<size_t>(n));
    for (auto& id : ids) id = static_cast<uint32_t>(rng.Index(size_t{1} << width));
    const auto mask = static_cast<uint64_t>(rng.UniformInt(0, (int64_t{1} << n) - 1));
    const auto outs = static_cast<uint64_t>(rng.UniformInt(0, (int64_t{1} << n) - 1)) & mask;
    emit(ChainHeader(n, ids, outs, mask));
  }
  out.Commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distips: distributed in-network IPS simulator"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "train and decompose an ensemble, write a bundle");
  auto* src = t->add_option_group("source");
  src->add_flag("--synthetic", train.synthetic, "Gaussian-mixture dataset");
  src->add_option("--dataset", train.dataset, "dataset CSV (f0..fN,label)")->check(CLI::ExistingFile);
  src->add_flag("--from-traffic", train.from_traffic, "features of simulated flows");
  src->require_option(1);
  t->add_option("--separation", train.separation, "easy|medium|hard (synthetic)");
  t->add_option("--rows", train.rows, "generated rows or flows")->check(CLI::PositiveNumber);
  t->add_option("--n", train.n, "weak learners")->check(CLI::PositiveNumber);
  t->add_option("--depth", train.depth, "max tree depth")->check(CLI::PositiveNumber);
  t->add_option("--ratio", train.ratio, "feature subsample ratio")->check(CLI::Range(1e-9, 1.0));
  t->add_option("--seed", train.seed);
  t->add_option("-o,--out", train.out)->required();

  std::string p_bundle, p_dataset, p_out;
  auto* p = app.add_subcommand("predict", "majority-vote predictions for a dataset CSV");
  p->add_option("--bundle", p_bundle)->required();
  p->add_option("--dataset", p_dataset)->required();
  p->add_option("-o,--out", p_out)->required();

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "place learners and route commodities");
  o->add_option("--topology", opt.topology)->required();
  auto* demand = o->add_option_group("demand");
  demand->add_option("--commodities", opt.commodities, "JSON list of {src,dst,demand}");
  demand->add_option("--traffic", opt.traffic, "traffic spec; one commodity per host pair");
  demand->require_option(1);
  o->add_option("--n", opt.n, "colors (weak learners)")->check(CLI::PositiveNumber);
  o->add_option("--r", opt.r, "replicas per color")->check(CLI::PositiveNumber);
  o->add_option("--mode", opt.mode)->check(CLI::IsMember({"wl", "sl"}));
  o->add_option("--population", opt.brkga.population);
  o->add_option("--elite", opt.brkga.elite_fraction);
  o->add_option("--mutant", opt.brkga.mutant_fraction);
  o->add_option("--rho", opt.brkga.inherit_prob);
  o->add_option("--generations", opt.brkga.generations);
  o->add_option("--seed", opt.brkga.seed);
  auto* search = o->add_option_group("search");
  search->add_flag("--exact", opt.exact, "enumerate all placements instead of BRKGA");
  search->add_option("--placement", opt.placement, "route a fixed {switch: [colors]} map");
  search->require_option(0, 1);
  o->add_option("-o,--out", opt.out)->required();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run a manifest, write metrics CSV");
  s->add_option("--manifest", sim.manifest)->required();
  s->add_option("--mode", sim.mode)->check(CLI::IsMember({"wl", "sl", "both"}));
  s->add_option("--sweep-attack", sim.sweep, "lo:hi:step attack rates");
  s->add_option("--event-log", sim.event_log, "per-event CSV for a single-mode run");
  s->add_option("--workers", sim.workers, "sweep worker threads (0: all cores)");
  s->add_option("-o,--out", sim.out)->required();

  std::string tr_topology, tr_traffic, tr_out;
  uint64_t tr_seed = 1;
  std::optional<double> tr_rate;
  auto* tr = app.add_subcommand("trace", "write the packet trace of a traffic spec");
  tr->add_option("--topology", tr_topology)->required();
  tr->add_option("--traffic", tr_traffic)->required();
  tr->add_option("--seed", tr_seed);
  tr->add_option("--attack-rate", tr_rate)->check(CLI::PositiveNumber);
  tr->add_option("-o,--out", tr_out)->required();

  std::string cv_out;
  uint64_t cv_seed = 1;
  auto* cv = app.add_subcommand("chain-vectors", "write chain header conformance vectors");
  cv->add_option("--seed", cv_seed);
  cv->add_option("-o,--out", cv_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*t) return RunTrain(train);
    if (*p) return RunPredict(p_bundle, p_dataset, p_out);
    if (*o) return RunOptimize(opt);
    if (*s) return RunSimulate(sim);
    if (*tr) return RunTrace(tr_topology, tr_traffic, tr_seed, tr_rate, tr_out);
    if (*cv) return RunChainVectors(cv_out, cv_seed);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
