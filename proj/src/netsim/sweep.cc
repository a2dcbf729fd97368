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

#include "distips/netsim/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "distips/common/error.h"

namespace distips {

std::vector<SweepRow> CompareDeployments(const NetworkGraph& graph,
                                         const DeploymentPlan& wl_plan,
                                         const DeploymentPlan& sl_plan,
                                         const StrongLearner& model,
                                         const std::vector<double>& attack_rates,
                                         const TrafficSpec& base_traffic,
                                         const CostModel& cost,
                                         const SweepOptions& options) {
  if (wl_plan.placement.mode != PlacementMode::kWeakLearners ||
      sl_plan.placement.mode != PlacementMode::kStrongLearner) {
    throw InputError("sweep needs one wl plan and one sl plan");
  }
  if (!wl_plan.feasible() || !sl_plan.feasible()) {
    throw InfeasibleError("sweep plans must cover every commodity");
  }
  const size_t jobs = attack_rates.size() * 2;
  std::vector<SweepRow> rows(jobs);
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (size_t j = next++; j < jobs; j = next++) {
      try {
        const double rate = attack_rates[j / 2];
        const DeploymentPlan& plan = j % 2 == 0 ? wl_plan : sl_plan;
        // Regenerated per job so workers share nothing mutable.
        const auto packets = GenerateTraffic(WithAttackRate(base_traffic, rate), graph);
        ScenarioOptions so;
        so.duration_s = options.duration_s;
        so.seed = base_traffic.seed;
        so.registry = options.registry;
        rows[j] = SweepRow{rate, RunScenario(graph, plan, model, packets, cost, so)};
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<double> ParseRateRange(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3) {
    throw InputError("rate range must look like lo:hi:step, got '" + text + "'");
  }
  if (!(lo > 0) || !(step > 0) || hi < lo) {
    throw InputError("rate range needs 0 < lo <= hi and step > 0");
  }
  std::vector<double> rates;
  const auto count = static_cast<int64_t>(std::floor((hi - lo) / step + 1e-9));
  for (int64_t i = 0; i <= count; ++i) rates.push_back(lo + static_cast<double>(i) * step);
  return rates;
}

void WriteMetricsHeader(std::ostream& out) {
  out << "mode,attack_rate,seed,duration_s,injected,delivered,dropped,suppressed,"
         "avg_throughput_bps,benign_throughput_bps,mean_util,mean_util_all,peak_util,"
         "tti_count,tti_mean_ms,tti_max_ms,tp,tn,fp,fn,fpr,fnr,blocked_flows,"
         "uninferred_flows,stretch_pct\n";
}

namespace {

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void WriteMetricsRow(std::ostream& out, double attack_rate, const MetricsReport& r) {
  out << ModeName(r.mode) << ',' << Fixed(attack_rate) << ',' << r.seed << ','
      << Fixed(r.duration_s) << ',' << r.injected << ',' << r.delivered << ','
      << r.dropped << ',' << r.suppressed << ',' << Fixed(r.avg_throughput_bps) << ','
      << Fixed(r.benign_throughput_bps) << ',' << Fixed(r.mean_utilization) << ','
      << Fixed(r.mean_utilization_all) << ',' << Fixed(r.peak_utilization) << ','
      << r.tti_ms.size() << ',' << Fixed(r.tti_mean_ms) << ',' << Fixed(r.tti_max_ms)
      << ',' << r.confusion.tp << ',' << r.confusion.tn << ',' << r.confusion.fp << ','
      << r.confusion.fn << ',' << Fixed(r.fpr) << ',' << Fixed(r.fnr) << ','
      << r.blocked_flows << ',' << r.uninferred_flows << ',' << Fixed(r.stretch_pct)
      << '\n';
}

void WriteMetricsCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  WriteMetricsHeader(out);
  for (const SweepRow& row : rows) WriteMetricsRow(out, row.attack_rate, row.report);
}

}  // namespace distips
