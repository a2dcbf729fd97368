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

#include "distips/flow/trace.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "distips/common/error.h"

namespace distips {

namespace {

constexpr const char* kTraceHeader = "ts,src_ip,dst_ip,src_port,dst_port,proto,size,label";

template <typename T>
T ParseNumber(std::string_view cell, size_t line_no, const char* what) {
  T value{};
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError("trace line " + std::to_string(line_no) + ": bad " + what +
                     " '" + std::string(cell) + "'");
  }
  return value;
}

}  // namespace

std::vector<PacketRecord> ReadTrace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("trace is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) {
    throw InputError(std::string("trace header must be '") + kTraceHeader + "'");
  }
  std::vector<PacketRecord> packets;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 8) {
      throw InputError("trace line " + std::to_string(line_no) + ": expected 8 columns");
    }
    PacketRecord p;
    p.timestamp = ParseNumber<double>(cells[0], line_no, "timestamp");
    p.src_ip = ParseIpv4(std::string(cells[1]));
    p.dst_ip = ParseIpv4(std::string(cells[2]));
    p.src_port = ParseNumber<uint16_t>(cells[3], line_no, "src_port");
    p.dst_port = ParseNumber<uint16_t>(cells[4], line_no, "dst_port");
    p.protocol = static_cast<uint8_t>(ParseNumber<unsigned>(cells[5], line_no, "proto"));
    p.size = ParseNumber<uint32_t>(cells[6], line_no, "size");
    p.label_hint = ParseNumber<int>(cells[7], line_no, "label");
    if (p.label_hint != 0 && p.label_hint != 1) {
      throw InputError("trace line " + std::to_string(line_no) + ": label must be 0 or 1");
    }
    p.Validate();
    packets.push_back(p);
  }
  return packets;
}

std::vector<PacketRecord> ReadTraceFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trace " + path.string());
  return ReadTrace(in);
}

void WriteTrace(std::ostream& out, const std::vector<PacketRecord>& packets) {
  out << kTraceHeader << '\n';
  char ts[64];
  for (const PacketRecord& p : packets) {
    auto [end, ec] = std::to_chars(ts, ts + sizeof(ts), p.timestamp);
    out.write(ts, end - ts);
    out << ',' << FormatIpv4(p.src_ip) << ',' << FormatIpv4(p.dst_ip) << ','
        << p.src_port << ',' << p.dst_port << ',' << unsigned{p.protocol} << ','
        << p.size << ',' << p.label_hint << '\n';
  }
}

void WriteTraceFile(const std::filesystem::path& path,
                    const std::vector<PacketRecord>& packets) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  WriteTrace(out, packets);
}

}  // namespace distips
