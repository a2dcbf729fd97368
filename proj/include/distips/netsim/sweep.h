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

#ifndef DISTIPS_NETSIM_SWEEP_H_
#define DISTIPS_NETSIM_SWEEP_H_

#include <iosfwd>
#include <vector>

#include "distips/deploy/graph.h"
#include "distips/deploy/placement.h"
#include "distips/ensemble/ensemble.h"
#include "distips/netsim/cost_model.h"
#include "distips/netsim/simulator.h"
#include "distips/netsim/traffic.h"

namespace distips {

struct SweepRow {
  double attack_rate = 0;
  MetricsReport report;
};

struct SweepOptions {
  double duration_s = 300.0;
  FeatureRegistry registry;
  unsigned workers = 0;  // 0: hardware concurrency
};

// Runs both deployments at every rate on identical traffic. Rows are ordered
// by rate, WL before SL, regardless of worker scheduling.
std::vector<SweepRow> CompareDeployments(const NetworkGraph& graph,
                                         const DeploymentPlan& wl_plan,
                                         const DeploymentPlan& sl_plan,
                                         const StrongLearner& model,
                                         const std::vector<double>& attack_rates,
                                         const TrafficSpec& base_traffic,
                                         const CostModel& cost,
                                         const SweepOptions& options);

// "lo:hi:step", inclusive of hi.
std::vector<double> ParseRateRange(const std::string& text);

void WriteMetricsHeader(std::ostream& out);
void WriteMetricsRow(std::ostream& out, double attack_rate, const MetricsReport& r);
void WriteMetricsCsv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace distips

#endif  // DISTIPS_NETSIM_SWEEP_H_
