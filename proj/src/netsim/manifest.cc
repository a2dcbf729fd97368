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

#include "distips/netsim/manifest.h"

#include <fstream>
#include <sstream>

#include "distips/common/error.h"
#include "json.hpp"

namespace distips {

ExperimentManifest ManifestFromJson(const std::string& text,
                                    const std::filesystem::path& base_dir) {
  using nlohmann::json;
  ExperimentManifest m;
  try {
    const json doc = json::parse(text);
    auto file = [&](const char* key) {
      std::filesystem::path p = doc.at(key).get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      if (!std::filesystem::is_regular_file(p)) {
        throw InputError(std::string("manifest ") + key + " not found: " + p.string());
      }
      return p;
    };
    m.topology = file("topology");
    m.wl_plan = file("wl_plan");
    m.sl_plan = file("sl_plan");
    m.bundle = file("bundle");
    m.cost_model = file("cost_model");
    m.traffic = file("traffic");
    if (!doc.contains("seed")) throw InputError("manifest must set an explicit seed");
    m.seed = doc.at("seed").get<uint64_t>();
    m.mode = doc.value("mode", std::string("both"));
    if (m.mode != "wl" && m.mode != "sl" && m.mode != "both") {
      throw InputError("manifest mode must be wl, sl or both");
    }
    m.duration_s = doc.value("duration_s", 300.0);
    if (!(m.duration_s > 0)) throw InputError("manifest duration_s must be positive");
    if (doc.contains("attack_rate")) m.attack_rate = doc.at("attack_rate").get<double>();
    if (doc.contains("sweep_attack")) {
      m.sweep_attack = doc.at("sweep_attack").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
  return m;
}

ExperimentManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read manifest " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ManifestFromJson(text.str(), path.parent_path());
}

}  // namespace distips
