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

#include "distips/flow/packet.h"

#include <charconv>
#include <cmath>

#include "distips/common/error.h"

namespace distips {

void PacketRecord::Validate() const {
  if (size < kMinPacketSize) {
    throw InputError("packet size " + std::to_string(size) +
                     " below the 68-byte minimum");
  }
  if (!std::isfinite(timestamp) || timestamp < 0.0) {
    throw InputError("packet timestamp must be finite and non-negative");
  }
}

std::string FlowKey::ToString() const {
  return FormatIpv4(src_ip) + ":" + std::to_string(src_port) + "->" +
         FormatIpv4(dst_ip) + ":" + std::to_string(dst_port) + "/" +
         std::to_string(protocol);
}

uint32_t ParseIpv4(const std::string& text) {
  uint32_t ip = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || value > 255) {
      throw InputError("malformed IPv4 address '" + text + "'");
    }
    ip = (ip << 8) | value;
    p = next;
    if (octet < 3) {
      if (p == end || *p != '.') throw InputError("malformed IPv4 address '" + text + "'");
      ++p;
    }
  }
  if (p != end) throw InputError("malformed IPv4 address '" + text + "'");
  return ip;
}

std::string FormatIpv4(uint32_t ip) {
  return std::to_string(ip >> 24) + "." + std::to_string((ip >> 16) & 0xFF) +
         "." + std::to_string((ip >> 8) & 0xFF) + "." +
         std::to_string(ip & 0xFF);
}

}  // namespace distips
