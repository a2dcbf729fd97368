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

#ifndef DISTIPS_FLOW_FEATURES_H_
#define DISTIPS_FLOW_FEATURES_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distips/flow/packet.h"

namespace distips {

// Per-window statistics, in feature order within each window.
enum class FlowStat {
  kPacketCount,
  kByteSum,
  kSizeMean,
  kSizeStd,
  kSizeMin,
  kSizeMax,
  kDuration,
  kIatMean,
  kIatStd,
  kPacketsPerSec,
  kBytesPerSec,
  kSmallPacketFraction,
};

inline constexpr int kStatCount = 12;
inline constexpr uint32_t kSmallPacketBytes = 128;

std::string_view StatName(FlowStat stat);

// Feature layout: for window index w and statistic s the feature index is
// w * 12 + s, with each statistic computed over the first `windows[w]`
// packets of the flow. The last window equals the trigger count.
class FeatureRegistry {
 public:
  // Default {10, 20, 40, 60, 80, 100}: 72 features, trigger at 100.
  FeatureRegistry();

  // Windows must be non-empty, positive, and strictly ascending.
  explicit FeatureRegistry(std::vector<int> windows);

  const std::vector<int>& windows() const { return windows_; }
  int trigger_count() const { return windows_.back(); }
  int feature_count() const { return static_cast<int>(windows_.size()) * kStatCount; }

  // e.g. "w100_size_mean".
  std::string FeatureName(int index) const;

 private:
  std::vector<int> windows_;
};

// Requires exactly trigger_count packets; throws InputError otherwise.
// Zero-duration windows report 0 for both rate statistics; fewer than two
// inter-arrival gaps report iat_std 0.
std::vector<double> ExtractFeatures(std::span<const PacketRecord> packets,
                                    const FeatureRegistry& registry);

// output[i] = features[subset[i]]. Throws InputError on an index out of
// range.
std::vector<double> ProjectFeatures(std::span<const double> features,
                                    std::span<const int> subset);

}  // namespace distips

#endif  // DISTIPS_FLOW_FEATURES_H_
