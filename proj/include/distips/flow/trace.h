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

#ifndef DISTIPS_FLOW_TRACE_H_
#define DISTIPS_FLOW_TRACE_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "distips/flow/packet.h"

namespace distips {

// Flow-trace CSV: header `ts,src_ip,dst_ip,src_port,dst_port,proto,size,label`
// and one packet per row, IPs in dotted-quad form.
std::vector<PacketRecord> ReadTrace(std::istream& in);
std::vector<PacketRecord> ReadTraceFile(const std::filesystem::path& path);

void WriteTrace(std::ostream& out, const std::vector<PacketRecord>& packets);
void WriteTraceFile(const std::filesystem::path& path,
                    const std::vector<PacketRecord>& packets);

}  // namespace distips

#endif  // DISTIPS_FLOW_TRACE_H_
