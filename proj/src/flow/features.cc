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

#include "distips/flow/features.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "distips/common/error.h"

namespace distips {

std::string_view StatName(FlowStat stat) {
  static constexpr std::array<std::string_view, kStatCount> kNames = {
      "packet_count", "byte_sum",  "size_mean",     "size_std",
      "size_min",     "size_max",  "duration",      "iat_mean",
      "iat_std",      "pkts_per_sec", "bytes_per_sec", "small_pkt_fraction"};
  return kNames[static_cast<size_t>(stat)];
}

FeatureRegistry::FeatureRegistry()
    : FeatureRegistry(std::vector<int>{10, 20, 40, 60, 80, 100}) {}

FeatureRegistry::FeatureRegistry(std::vector<int> windows)
    : windows_(std::move(windows)) {
  if (windows_.empty()) throw InputError("feature registry needs a window");
  for (size_t i = 0; i < windows_.size(); ++i) {
    if (windows_[i] < 1 || (i > 0 && windows_[i] <= windows_[i - 1])) {
      throw InputError("feature windows must be positive and strictly ascending");
    }
  }
}

std::string FeatureRegistry::FeatureName(int index) const {
  if (index < 0 || index >= feature_count()) {
    throw InputError("feature index out of range");
  }
  return "w" + std::to_string(windows_[static_cast<size_t>(index / kStatCount)]) + "_" +
         std::string(StatName(static_cast<FlowStat>(index % kStatCount)));
}

namespace {

// Population mean and standard deviation of `values`.
std::pair<double, double> MeanStd(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

void WindowStats(std::span<const PacketRecord> packets, double* out) {
  const size_t n = packets.size();
  std::vector<double> sizes(n);
  double byte_sum = 0;
  double size_min = packets[0].size;
  double size_max = packets[0].size;
  size_t small = 0;
  for (size_t i = 0; i < n; ++i) {
    const double s = packets[i].size;
    sizes[i] = s;
    byte_sum += s;
    size_min = std::min(size_min, s);
    size_max = std::max(size_max, s);
    if (packets[i].size < kSmallPacketBytes) ++small;
  }
  std::vector<double> gaps;
  gaps.reserve(n > 0 ? n - 1 : 0);
  for (size_t i = 1; i < n; ++i) {
    gaps.push_back(packets[i].timestamp - packets[i - 1].timestamp);
  }
  const auto [size_mean, size_std] = MeanStd(sizes);
  const double duration = packets[n - 1].timestamp - packets[0].timestamp;
  const auto [iat_mean, iat_std_raw] = MeanStd(gaps);
  const double iat_std = gaps.size() < 2 ? 0.0 : iat_std_raw;
  const double count = static_cast<double>(n);

  out[static_cast<int>(FlowStat::kPacketCount)] = count;
  out[static_cast<int>(FlowStat::kByteSum)] = byte_sum;
  out[static_cast<int>(FlowStat::kSizeMean)] = size_mean;
  out[static_cast<int>(FlowStat::kSizeStd)] = size_std;
  out[static_cast<int>(FlowStat::kSizeMin)] = size_min;
  out[static_cast<int>(FlowStat::kSizeMax)] = size_max;
  out[static_cast<int>(FlowStat::kDuration)] = duration;
  out[static_cast<int>(FlowStat::kIatMean)] = iat_mean;
  out[static_cast<int>(FlowStat::kIatStd)] = iat_std;
  out[static_cast<int>(FlowStat::kPacketsPerSec)] = duration > 0 ? count / duration : 0.0;
  out[static_cast<int>(FlowStat::kBytesPerSec)] = duration > 0 ? byte_sum / duration : 0.0;
  out[static_cast<int>(FlowStat::kSmallPacketFraction)] = static_cast<double>(small) / count;
}

}  // namespace

std::vector<double> ExtractFeatures(std::span<const PacketRecord> packets,
                                    const FeatureRegistry& registry) {
  if (static_cast<int>(packets.size()) != registry.trigger_count()) {
    throw InputError("feature extraction needs exactly " +
                     std::to_string(registry.trigger_count()) +
                     " packets, got " + std::to_string(packets.size()));
  }
  std::vector<double> features(static_cast<size_t>(registry.feature_count()));
  for (size_t w = 0; w < registry.windows().size(); ++w) {
    WindowStats(packets.first(static_cast<size_t>(registry.windows()[w])),
                features.data() + w * kStatCount);
  }
  return features;
}

std::vector<double> ProjectFeatures(std::span<const double> features,
                                    std::span<const int> subset) {
  std::vector<double> out;
  out.reserve(subset.size());
  for (int index : subset) {
    if (index < 0 || static_cast<size_t>(index) >= features.size()) {
      throw InputError("projection index " + std::to_string(index) +
                       " out of range for vector of length " +
                       std::to_string(features.size()));
    }
    out.push_back(features[static_cast<size_t>(index)]);
  }
  return out;
}

}  // namespace distips
