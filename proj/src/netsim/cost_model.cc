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

#include "distips/netsim/cost_model.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "distips/common/error.h"
#include "json.hpp"

namespace distips {

void CostModel::Validate() const {
  if (!(capacity_cycles_per_s > 0)) throw InputError("cost model: capacity must be positive");
  if (c_fwd < 0 || c_feat < 0 || c_node < 0 || c_hdr < 0) {
    throw InputError("cost model: per-operation costs must be non-negative");
  }
  if (!(queue_bound_s > 0)) throw InputError("cost model: queue bound must be positive");
  if (link_latency_us < 0) throw InputError("cost model: link latency must be non-negative");
  if (!(idle_timeout_s > 0)) throw InputError("cost model: idle timeout must be positive");
}

int64_t CostModel::ServiceMicros(double cycles) const {
  return static_cast<int64_t>(std::ceil(cycles * 1e6 / capacity_cycles_per_s));
}

CostModel CostModelFromJson(const std::string& text) {
  using nlohmann::json;
  CostModel m;
  try {
    const json doc = json::parse(text);
    static const std::set<std::string> known = {
        "capacity_cycles_per_s", "c_fwd", "c_feat", "c_node", "c_hdr",
        "queue_bound_s", "link_latency_us", "idle_timeout_s", "note"};
    for (const auto& [key, value] : doc.items()) {
      if (!known.count(key)) throw InputError("cost model: unknown key '" + key + "'");
    }
    m.capacity_cycles_per_s = doc.value("capacity_cycles_per_s", m.capacity_cycles_per_s);
    m.c_fwd = doc.value("c_fwd", m.c_fwd);
    m.c_feat = doc.value("c_feat", m.c_feat);
    m.c_node = doc.value("c_node", m.c_node);
    m.c_hdr = doc.value("c_hdr", m.c_hdr);
    m.queue_bound_s = doc.value("queue_bound_s", m.queue_bound_s);
    m.link_latency_us = doc.value("link_latency_us", m.link_latency_us);
    m.idle_timeout_s = doc.value("idle_timeout_s", m.idle_timeout_s);
  } catch (const json::exception& e) {
    throw InputError(std::string("cost model: ") + e.what());
  }
  m.Validate();
  return m;
}

CostModel LoadCostModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open cost model " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return CostModelFromJson(text.str());
}

std::string CostModelToJson(const CostModel& m) {
  nlohmann::json doc = {{"capacity_cycles_per_s", m.capacity_cycles_per_s},
                        {"c_fwd", m.c_fwd},
                        {"c_feat", m.c_feat},
                        {"c_node", m.c_node},
                        {"c_hdr", m.c_hdr},
                        {"queue_bound_s", m.queue_bound_s},
                        {"link_latency_us", m.link_latency_us},
                        {"idle_timeout_s", m.idle_timeout_s}};
  return doc.dump(1) + "\n";
}

}  // namespace distips
