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

#ifndef DISTIPS_NETSIM_SIMULATOR_H_
#define DISTIPS_NETSIM_SIMULATOR_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "distips/deploy/graph.h"
#include "distips/deploy/placement.h"
#include "distips/ensemble/ensemble.h"
#include "distips/ensemble/metrics.h"
#include "distips/flow/features.h"
#include "distips/flow/packet.h"
#include "distips/netsim/cost_model.h"

namespace distips {

// Optional audit trail, one CSV row per event:
//   time_us,event,switch,flow,packet,cycles
// Events: arrive, fwd, infer, drop, suppress, deliver, verdict, block.
class EventLog {
 public:
  explicit EventLog(std::ostream& out);
  void Write(int64_t time_us, const char* event, int switch_index, int flow,
             int64_t packet, double cycles);

 private:
  std::ostream* out_;
};

struct ScenarioOptions {
  double duration_s = 300.0;
  uint64_t seed = 1;  // recorded in the report; all randomness is in the traffic
  FeatureRegistry registry;
  EventLog* log = nullptr;
};

struct SwitchMetrics {
  std::string name;
  bool hosts_vnf = false;
  double utilization = 0;       // busy fraction over [0, duration)
  double peak_utilization = 0;  // busiest 1 s window
  double charged_cycles = 0;
  double inference_cycles = 0;
  int64_t forwarded = 0;
  int64_t dropped = 0;
  int64_t suppressed = 0;
};

struct MetricsReport {
  PlacementMode mode = PlacementMode::kWeakLearners;
  double duration_s = 0;
  uint64_t seed = 0;

  // Packet conservation: injected == delivered + dropped + suppressed.
  int64_t injected = 0;
  int64_t delivered = 0;
  int64_t dropped = 0;
  int64_t suppressed = 0;
  int64_t delivered_bytes = 0;
  int64_t benign_delivered_bytes = 0;
  double avg_throughput_bps = 0;
  double benign_throughput_bps = 0;

  std::vector<SwitchMetrics> switches;
  double mean_utilization = 0;      // over switches hosting a learner
  double mean_utilization_all = 0;  // over every switch
  double peak_utilization = 0;

  std::vector<double> tti_ms;  // one sample per finalized flow
  double tti_mean_ms = 0;
  double tti_max_ms = 0;

  int64_t flows = 0;
  int64_t finalized_flows = 0;
  int64_t blocked_flows = 0;
  int64_t uninferred_flows = 0;
  ConfusionCounts confusion;
  double fpr = 0;
  double fnr = 0;

  // Finalized verdicts whose hosting switches all saw the same feature
  // vector, and how many of those disagreed with the centralized model.
  int64_t fidelity_checked = 0;
  int64_t fidelity_mismatches = 0;
  // Packets delivered although they reached the ingress after the flow's
  // block notification did. Always 0 for a correct simulator.
  int64_t soundness_violations = 0;

  double stretch_pct = 0;
};

// Seeded discrete-event run of `packets` over the plan's walks, with the
// plan's learners hosted on switches. Packet timestamps are in seconds and
// must be sorted; packets at or after `duration_s` are ignored. The run
// drains all in-flight work before returning. Throws InputError when a
// packet's host pair has no feasible route in the plan or the model does not
// match the registry.
MetricsReport RunScenario(const NetworkGraph& graph, const DeploymentPlan& plan,
                          const StrongLearner& model,
                          const std::vector<PacketRecord>& packets,
                          const CostModel& cost, const ScenarioOptions& options);

}  // namespace distips

#endif  // DISTIPS_NETSIM_SIMULATOR_H_
