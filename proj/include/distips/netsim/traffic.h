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

#ifndef DISTIPS_NETSIM_TRAFFIC_H_
#define DISTIPS_NETSIM_TRAFFIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "distips/deploy/graph.h"
#include "distips/deploy/placement.h"
#include "distips/ensemble/dataset.h"
#include "distips/flow/features.h"
#include "distips/flow/packet.h"

namespace distips {

inline constexpr uint32_t kBenignSizeMax = 1500;
inline constexpr uint32_t kMaliciousSizeMax = 15000;

// One traffic source between two hosts. With packets_per_connection > 0 the
// source opens a new connection (new source port, so a new 5-tuple) after
// that many packets, as a flood tool cycling connections does; 0 keeps a
// single flow for the whole duration.
struct FlowSpec {
  std::string src;
  std::string dst;
  double rate_pps = 100;
  double start_s = 0;
  double duration_s = 300;
  uint32_t size_min = kMinPacketSize;
  uint32_t size_max = kBenignSizeMax;
  int label = kBenign;
  int64_t packets_per_connection = 0;
  uint16_t dst_port = 80;
  uint8_t protocol = kProtoTcp;
};

struct TrafficSpec {
  std::vector<FlowSpec> flows;
  uint64_t seed = 1;

  // Throws InputError on non-positive rates or durations, bad size ranges.
  void Validate() const;
};

// Traffic-spec JSON:
//   {duration_s?, benign_size?: [lo, hi], malicious_size?: [lo, hi],
//    benign: [{src, dst, rate_pps, start_s?, duration_s?}],
//    malicious: [{src, dst, rate_pps, packets_per_connection?, ...}]}
// Sizes default to [68, 1500] and [68, 15000]; the seed comes from the
// caller so that experiments keep seeds explicit.
TrafficSpec TrafficSpecFromJson(const std::string& text, uint64_t seed);
TrafficSpec LoadTrafficSpec(const std::filesystem::path& path, uint64_t seed);

// Copy of `spec` with every malicious source set to `rate_pps`.
// One unit-demand commodity per distinct (src, dst) host pair, in first-seen
// order.
std::vector<Commodity> CommoditiesFromTraffic(const TrafficSpec& spec);

TrafficSpec WithAttackRate(const TrafficSpec& spec, double rate_pps);

// Poisson arrivals at each source's mean rate and i.i.d. uniform integer
// sizes, each source on its own seed stream. Packets are returned sorted by
// timestamp (ties in source order) and carry the source's label.
std::vector<PacketRecord> GenerateTraffic(const TrafficSpec& spec,
                                          const NetworkGraph& graph);

struct TrafficDatasetOptions {
  size_t flows = 3000;
  double malicious_fraction = 0.5;
  uint64_t seed = 1;
};

// Labeled feature vectors of flows drawn from the same packet processes the
// simulator uses: benign at 10/100/1000 pkt/s with sizes in [68, 1500],
// malicious at 100..1000 pkt/s with sizes in [68, 15000].
LabeledDataset MakeTrafficDataset(const FeatureRegistry& registry,
                                  const TrafficDatasetOptions& options);

}  // namespace distips

#endif  // DISTIPS_NETSIM_TRAFFIC_H_
