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

#ifndef DISTIPS_NETSIM_COST_MODEL_H_
#define DISTIPS_NETSIM_COST_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <string>

namespace distips {

// Processing-cost model standing in for measured switch CPU. Every switch
// is a single FIFO server shared by forwarding and inference. Values are
// modeling constants, not measurements.
struct CostModel {
  double capacity_cycles_per_s = 1e9;
  double c_fwd = 3e5;      // per packet forwarded
  double c_feat = 6.5e3;   // per (feature x buffered packet) at a trigger
  double c_node = 2e4;     // per tree node visited
  double c_hdr = 4e6;      // per chain header operation
  // Plain packets are dropped when the work already queued ahead of them
  // exceeds this much time.
  double queue_bound_s = 1.0;
  int64_t link_latency_us = 1000;
  double idle_timeout_s = 60.0;

  // Throws InputError on negative costs or non-positive capacity/bound.
  void Validate() const;

  // Service time of `cycles` of work, rounded up to whole microseconds.
  int64_t ServiceMicros(double cycles) const;
};

CostModel CostModelFromJson(const std::string& text);
CostModel LoadCostModel(const std::filesystem::path& path);
std::string CostModelToJson(const CostModel& model);

}  // namespace distips

#endif  // DISTIPS_NETSIM_COST_MODEL_H_
