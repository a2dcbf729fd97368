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

#include "distips/netsim/traffic.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "distips/common/error.h"
#include "distips/common/random.h"
#include "json.hpp"

namespace distips {

void TrafficSpec::Validate() const {
  for (const FlowSpec& f : flows) {
    const std::string who = f.src + "->" + f.dst;
    if (!(f.rate_pps > 0)) throw InputError("traffic " + who + ": rate must be positive");
    if (!(f.duration_s > 0)) throw InputError("traffic " + who + ": duration must be positive");
    if (f.start_s < 0) throw InputError("traffic " + who + ": start must be non-negative");
    if (f.size_min < kMinPacketSize || f.size_max < f.size_min) {
      throw InputError("traffic " + who + ": size range must satisfy 68 <= min <= max");
    }
    if (f.packets_per_connection < 0) {
      throw InputError("traffic " + who + ": packets_per_connection must be >= 0");
    }
  }
}

TrafficSpec TrafficSpecFromJson(const std::string& text, uint64_t seed) {
  using nlohmann::json;
  TrafficSpec spec;
  spec.seed = seed;
  try {
    const json doc = json::parse(text);
    const double duration = doc.value("duration_s", 300.0);
    auto range = [&](const char* name, uint32_t hi) {
      std::pair<uint32_t, uint32_t> r{kMinPacketSize, hi};
      if (doc.contains(name)) {
        r = {doc.at(name).at(0).get<uint32_t>(), doc.at(name).at(1).get<uint32_t>()};
      }
      return r;
    };
    const auto benign_size = range("benign_size", kBenignSizeMax);
    const auto malicious_size = range("malicious_size", kMaliciousSizeMax);
    auto read = [&](const json& entry, int label, std::pair<uint32_t, uint32_t> size) {
      FlowSpec f;
      f.src = entry.at("src").get<std::string>();
      f.dst = entry.at("dst").get<std::string>();
      f.rate_pps = entry.at("rate_pps").get<double>();
      f.start_s = entry.value("start_s", 0.0);
      f.duration_s = entry.value("duration_s", duration);
      f.size_min = size.first;
      f.size_max = size.second;
      f.label = label;
      f.packets_per_connection = entry.value("packets_per_connection", int64_t{0});
      f.dst_port = entry.value("dst_port", uint16_t{80});
      spec.flows.push_back(f);
    };
    for (const json& e : doc.value("benign", json::array())) read(e, kBenign, benign_size);
    for (const json& e : doc.value("malicious", json::array())) read(e, kMalicious, malicious_size);
  } catch (const json::exception& e) {
    throw InputError(std::string("traffic spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

TrafficSpec LoadTrafficSpec(const std::filesystem::path& path, uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open traffic spec " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return TrafficSpecFromJson(text.str(), seed);
}

std::vector<Commodity> CommoditiesFromTraffic(const TrafficSpec& spec) {
  std::vector<Commodity> out;
  for (const FlowSpec& f : spec.flows) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Commodity& c) {
      return c.src_host == f.src && c.dst_host == f.dst;
    });
    if (!seen) out.push_back(Commodity{f.src, f.dst, 1.0});
  }
  return out;
}

TrafficSpec WithAttackRate(const TrafficSpec& spec, double rate_pps) {
  TrafficSpec out = spec;
  for (FlowSpec& f : out.flows) {
    if (f.label == kMalicious) f.rate_pps = rate_pps;
  }
  out.Validate();
  return out;
}

std::vector<PacketRecord> GenerateTraffic(const TrafficSpec& spec,
                                          const NetworkGraph& graph) {
  spec.Validate();
  std::vector<PacketRecord> packets;
  for (size_t i = 0; i < spec.flows.size(); ++i) {
    const FlowSpec& f = spec.flows[i];
    const Host& src = graph.host(f.src);
    const Host& dst = graph.host(f.dst);
    Rng rng(DeriveSeed(spec.seed, i));
    const double end = f.start_s + f.duration_s;
    int64_t sent = 0;
    for (double t = f.start_s + rng.Exponential(f.rate_pps); t < end;
         t += rng.Exponential(f.rate_pps)) {
      const int64_t connection =
          f.packets_per_connection > 0 ? sent / f.packets_per_connection : 0;
      PacketRecord p;
      p.timestamp = t;
      p.src_ip = src.ip;
      p.dst_ip = dst.ip;
      p.src_port = static_cast<uint16_t>(
          1024 + (static_cast<int64_t>(i) * 4099 + connection) % 64000);
      p.dst_port = f.dst_port;
      p.protocol = f.protocol;
      p.size = static_cast<uint32_t>(rng.UniformInt(f.size_min, f.size_max));
      p.label_hint = f.label;
      packets.push_back(p);
      ++sent;
    }
  }
  std::stable_sort(packets.begin(), packets.end(),
                   [](const PacketRecord& a, const PacketRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return packets;
}

LabeledDataset MakeTrafficDataset(const FeatureRegistry& registry,
                                  const TrafficDatasetOptions& options) {
  static constexpr double kBenignRates[] = {10, 100, 1000};
  LabeledDataset data(registry.feature_count());
  Rng rng(DeriveSeed(options.seed, 0xDA7A));
  std::vector<PacketRecord> flow(static_cast<size_t>(registry.trigger_count()));
  for (size_t i = 0; i < options.flows; ++i) {
    const int label = rng.Uniform01() < options.malicious_fraction ? kMalicious : kBenign;
    const double rate = label == kMalicious ? 100.0 * static_cast<double>(rng.UniformInt(1, 10))
                                            : kBenignRates[rng.Index(3)];
    const uint32_t size_max = label == kMalicious ? kMaliciousSizeMax : kBenignSizeMax;
    double t = 300.0 * rng.Uniform01();
    for (PacketRecord& p : flow) {
      t += rng.Exponential(rate);
      p.timestamp = t;
      p.size = static_cast<uint32_t>(rng.UniformInt(kMinPacketSize, size_max));
      p.label_hint = label;
    }
    data.AddRow(ExtractFeatures(flow, registry), label);
  }
  return data;
}

}  // namespace distips
