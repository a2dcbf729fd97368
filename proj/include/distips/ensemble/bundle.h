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

#ifndef DISTIPS_ENSEMBLE_BUNDLE_H_
#define DISTIPS_ENSEMBLE_BUNDLE_H_

#include <filesystem>
#include <string>

#include "distips/ensemble/ensemble.h"

namespace distips {

inline constexpr const char* kVoteRuleName = "majority_tie_malicious";

// JSON model bundle:
//   {format_version, feature_count, n_learners, vote_rule,
//    learners: [{wl_id, feature_subset: [int],
//                nodes: [{f, t, l, r} | {leaf}]}]}
// Nodes are pre-order with the root at index 0. Thresholds are written in
// shortest round-trip decimal form, so a load restores them bit for bit.
std::string BundleToJson(const StrongLearner& model);

// Throws InputError on malformed JSON, schema violations, a version
// mismatch, or any StrongLearner invariant violation. Nothing is returned
// unless the whole document validates.
StrongLearner BundleFromJson(const std::string& text);

void SaveBundle(const StrongLearner& model, const std::filesystem::path& path);
StrongLearner LoadBundle(const std::filesystem::path& path);

}  // namespace distips

#endif  // DISTIPS_ENSEMBLE_BUNDLE_H_
