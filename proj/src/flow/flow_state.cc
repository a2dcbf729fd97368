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

#include "distips/flow/flow_state.h"

#include "distips/common/error.h"

namespace distips {

FlowState::FlowState(FlowKey key, const FeatureRegistry& registry)
    : key_(key), registry_(&registry) {
  packets_.reserve(static_cast<size_t>(registry.trigger_count()));
}

TriggerSignal FlowState::Observe(const PacketRecord& packet) {
  if (FlowKeyOf(packet) != key_) {
    throw InputError("packet " + FlowKeyOf(packet).ToString() +
                     " observed on flow " + key_.ToString());
  }
  if (triggered_) return {TriggerKind::kAlreadyTriggered, {}};
  packets_.push_back(packet);
  if (static_cast<int>(packets_.size()) < registry_->trigger_count()) {
    return {TriggerKind::kNotYet, {}};
  }
  triggered_ = true;
  verdict_ = FlowVerdict::kPending;
  return {TriggerKind::kTriggered, ExtractFeatures(packets_, *registry_)};
}

TriggerSignal FlowTable::Observe(const PacketRecord& packet, double now) {
  const FlowKey key = FlowKeyOf(packet);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    it = entries_.emplace(key, Entry{FlowState(key, *registry_), now}).first;
  }
  it->second.last_seen = now;
  return it->second.state.Observe(packet);
}

FlowState* FlowTable::Find(const FlowKey& key) {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second.state;
}

size_t FlowTable::EvictIdle(double now) {
  size_t evicted = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (now - it->second.last_seen > idle_timeout_s_) {
      it = entries_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

}  // namespace distips
