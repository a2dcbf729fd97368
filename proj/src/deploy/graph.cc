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

#include "distips/deploy/graph.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "distips/common/error.h"
#include "distips/flow/packet.h"
#include "json.hpp"

namespace distips {

int NetworkGraph::AddSwitch(const std::string& name) {
  if (switch_index_.count(name)) throw InputError("duplicate switch '" + name + "'");
  const int index = switch_count();
  switch_names_.push_back(name);
  switch_index_[name] = index;
  adjacency_.emplace_back();
  return index;
}

void NetworkGraph::AddHost(const std::string& name,
                           const std::string& attach_switch,
                           std::optional<uint32_t> ip) {
  if (host_index_.count(name)) throw InputError("duplicate host '" + name + "'");
  const int attach = SwitchIndex(attach_switch);
  const uint32_t addr = ip.value_or((10u << 24) + static_cast<uint32_t>(hosts_.size()) + 1);
  if (FindHostByIp(addr)) throw InputError("duplicate host ip for '" + name + "'");
  host_index_[name] = hosts_.size();
  hosts_.push_back({name, attach, addr});
}

void NetworkGraph::AddLink(const std::string& a, const std::string& b,
                           double cost) {
  const int ia = SwitchIndex(a);
  const int ib = SwitchIndex(b);
  if (ia == ib) throw InputError("self loop on '" + a + "'");
  if (!(cost > 0.0)) throw InputError("link " + a + "-" + b + " needs a positive cost");
  adjacency_[static_cast<size_t>(ia)].push_back({ib, cost});
  adjacency_[static_cast<size_t>(ib)].push_back({ia, cost});
  max_link_cost_ = std::max(max_link_cost_, cost);
  ++link_count_;
}

int NetworkGraph::SwitchIndex(const std::string& name) const {
  auto it = switch_index_.find(name);
  if (it == switch_index_.end()) throw InputError("unknown switch '" + name + "'");
  return it->second;
}

const Host& NetworkGraph::host(const std::string& name) const {
  auto it = host_index_.find(name);
  if (it == host_index_.end()) throw InputError("unknown host '" + name + "'");
  return hosts_[it->second];
}

const Host* NetworkGraph::FindHostByIp(uint32_t ip) const {
  for (const Host& h : hosts_) {
    if (h.ip == ip) return &h;
  }
  return nullptr;
}

NetworkGraph TopologyFromJson(const std::string& text) {
  using nlohmann::json;
  NetworkGraph g;
  try {
    const json doc = json::parse(text);
    for (const json& s : doc.at("switches")) g.AddSwitch(s.get<std::string>());
    for (const json& h : doc.at("hosts")) {
      std::optional<uint32_t> ip;
      if (h.contains("ip")) ip = ParseIpv4(h.at("ip").get<std::string>());
      g.AddHost(h.at("id").get<std::string>(), h.at("attach").get<std::string>(), ip);
    }
    for (const json& l : doc.at("links")) {
      g.AddLink(l.at("a").get<std::string>(), l.at("b").get<std::string>(),
                l.at("cost").get<double>());
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("topology: ") + e.what());
  }
  if (g.switch_count() == 0) throw InputError("topology has no switches");
  return g;
}

NetworkGraph LoadTopology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open topology " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return TopologyFromJson(text.str());
}

}  // namespace distips
