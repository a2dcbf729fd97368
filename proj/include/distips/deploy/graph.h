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

#ifndef DISTIPS_DEPLOY_GRAPH_H_
#define DISTIPS_DEPLOY_GRAPH_H_

#include <filesystem>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace distips {

struct Edge {
  int to;
  double cost;
};

struct Host {
  std::string name;
  int attach;      // switch index
  uint32_t ip;
};

// Undirected switch graph with positive link costs and hosts attached to
// switches. Switch indices follow insertion order.
class NetworkGraph {
 public:
  int AddSwitch(const std::string& name);
  // Without an explicit ip the host gets 10.0.0.<k>, k = 1 + host index.
  void AddHost(const std::string& name, const std::string& attach_switch,
               std::optional<uint32_t> ip = std::nullopt);
  // Throws InputError on unknown endpoints, self loops, or cost <= 0.
  void AddLink(const std::string& a, const std::string& b, double cost);

  int switch_count() const { return static_cast<int>(switch_names_.size()); }
  const std::string& switch_name(int s) const { return switch_names_[static_cast<size_t>(s)]; }
  int SwitchIndex(const std::string& name) const;
  std::span<const Edge> neighbors(int s) const { return adjacency_[static_cast<size_t>(s)]; }

  const std::vector<Host>& hosts() const { return hosts_; }
  const Host& host(const std::string& name) const;
  const Host* FindHostByIp(uint32_t ip) const;

  double max_link_cost() const { return max_link_cost_; }
  size_t link_count() const { return link_count_; }

 private:
  std::vector<std::string> switch_names_;
  std::map<std::string, int> switch_index_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<Host> hosts_;
  std::map<std::string, size_t> host_index_;
  double max_link_cost_ = 0.0;
  size_t link_count_ = 0;
};

// Topology JSON: {switches: [id], hosts: [{id, attach, ip?}],
// links: [{a, b, cost}]}.
NetworkGraph TopologyFromJson(const std::string& text);
NetworkGraph LoadTopology(const std::filesystem::path& path);

}  // namespace distips

#endif  // DISTIPS_DEPLOY_GRAPH_H_
