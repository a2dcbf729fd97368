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

#ifndef DISTIPS_FLOW_PACKET_H_
#define DISTIPS_FLOW_PACKET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace distips {

inline constexpr uint32_t kMinPacketSize = 68;
inline constexpr uint8_t kProtoTcp = 6;

struct PacketRecord {
  double timestamp = 0.0;  // seconds
  uint32_t src_ip = 0;
  uint32_t dst_ip = 0;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  uint8_t protocol = kProtoTcp;
  uint32_t size = kMinPacketSize;  // bytes
  // Ground truth for scoring the simulation; never fed to a learner.
  int label_hint = 0;

  // Throws InputError if size < 68 or the timestamp is negative/non-finite.
  void Validate() const;
};

// Directional 5-tuple: a->b and b->a are distinct flows.
struct FlowKey {
  uint32_t src_ip = 0;
  uint32_t dst_ip = 0;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  uint8_t protocol = 0;

  auto operator<=>(const FlowKey&) const = default;
  std::string ToString() const;
};

inline FlowKey FlowKeyOf(const PacketRecord& p) {
  return {p.src_ip, p.dst_ip, p.src_port, p.dst_port, p.protocol};
}

struct FlowKeyHash {
  size_t operator()(const FlowKey& k) const {
    uint64_t h = (uint64_t{k.src_ip} << 32) | k.dst_ip;
    h ^= (uint64_t{k.src_port} << 24 | uint64_t{k.dst_port} << 8 | k.protocol) *
         0x9E3779B97F4A7C15ULL;
    return std::hash<uint64_t>{}(h ^ (h >> 29));
  }
};

// Dotted-quad helpers. ParseIpv4 throws InputError on malformed text.
uint32_t ParseIpv4(const std::string& text);
std::string FormatIpv4(uint32_t ip);

}  // namespace distips

#endif  // DISTIPS_FLOW_PACKET_H_
