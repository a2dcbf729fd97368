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

#ifndef DISTIPS_NETSIM_MANIFEST_H_
#define DISTIPS_NETSIM_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace distips {

// Experiment description. Relative paths resolve against the manifest's
// directory; every referenced file must exist when the manifest is loaded.
struct ExperimentManifest {
  std::filesystem::path topology;
  std::filesystem::path wl_plan;
  std::filesystem::path sl_plan;
  std::filesystem::path bundle;
  std::filesystem::path cost_model;
  std::filesystem::path traffic;
  std::string mode = "both";  // wl | sl | both
  std::optional<double> attack_rate;
  std::optional<std::string> sweep_attack;  // lo:hi:step
  uint64_t seed = 0;
  double duration_s = 300.0;
};

ExperimentManifest ManifestFromJson(const std::string& text,
                                    const std::filesystem::path& base_dir);
ExperimentManifest LoadManifest(const std::filesystem::path& path);

}  // namespace distips

#endif  // DISTIPS_NETSIM_MANIFEST_H_
