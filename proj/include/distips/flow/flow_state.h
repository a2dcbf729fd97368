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

#ifndef DISTIPS_FLOW_FLOW_STATE_H_
#define DISTIPS_FLOW_FLOW_STATE_H_

#include <map>
#include <optional>
#include <vector>

#include "distips/flow/features.h"
#include "distips/flow/packet.h"

namespace distips {

enum class FlowVerdict { kNone, kPending, kBenign, kMalicious };

enum class TriggerKind {
  kNotYet,
  kTriggered,
  // The flow already fired; the packet was forwarded without buffering.
  kAlreadyTriggered,
};

struct TriggerSignal {
  TriggerKind kind = TriggerKind::kNotYet;
  std::vector<double> features;  // filled only for kTriggered
};

// Buffers the first trigger_count packets of one flow. The trigger fires
// exactly once, on the packet that fills the buffer; the verdict then
// becomes pending until the caller records a decision.
class FlowState {
 public:
  FlowState(FlowKey key, const FeatureRegistry& registry);

  // Throws InputError if the packet belongs to a different flow.
  TriggerSignal Observe(const PacketRecord& packet);

  const FlowKey& key() const { return key_; }
  bool triggered() const { return triggered_; }
  const std::vector<PacketRecord>& packets() const { return packets_; }
  FlowVerdict verdict() const { return verdict_; }
  void set_verdict(FlowVerdict v) { verdict_ = v; }

 private:
  FlowKey key_;
  const FeatureRegistry* registry_;
  std::vector<PacketRecord> packets_;
  bool triggered_ = false;
  FlowVerdict verdict_ = FlowVerdict::kNone;
};

// Flow table owned by one switch. Entries idle for longer than the timeout
// are evicted by EvictIdle.
class FlowTable {
 public:
  explicit FlowTable(const FeatureRegistry& registry, double idle_timeout_s = 60.0)
      : registry_(&registry), idle_timeout_s_(idle_timeout_s) {}

  // Looks up or creates the flow's state and feeds it the packet; `now` is
  // the observation time in seconds.
  TriggerSignal Observe(const PacketRecord& packet, double now);

  FlowState* Find(const FlowKey& key);
  size_t size() const { return entries_.size(); }

  // Returns the number of evicted flows.
  size_t EvictIdle(double now);

 private:
  struct Entry {
    FlowState state;
    double last_seen;
  };
  const FeatureRegistry* registry_;
  double idle_timeout_s_;
  std::map<FlowKey, Entry> entries_;
};

}  // namespace distips

#endif  // DISTIPS_FLOW_FLOW_STATE_H_
