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

#ifndef DISTIPS_ENSEMBLE_DATASET_H_
#define DISTIPS_ENSEMBLE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace distips {

inline constexpr int kBenign = 0;
inline constexpr int kMalicious = 1;
inline constexpr int kDefaultFeatureCount = 72;

// Row-major table of finite feature vectors with binary labels
// (0 benign, 1 malicious).
class LabeledDataset {
 public:
  explicit LabeledDataset(int feature_count = kDefaultFeatureCount);

  // Throws InputError on length mismatch, non-finite values, or a label
  // outside {0, 1}.
  void AddRow(std::span<const double> features, int label);

  int feature_count() const { return feature_count_; }
  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(size_t i) const {
    return {values_.data() + i * static_cast<size_t>(feature_count_),
            static_cast<size_t>(feature_count_)};
  }
  int label(size_t i) const { return labels_[i]; }
  std::span<const int> labels() const { return labels_; }

  LabeledDataset SelectRows(std::span<const size_t> rows) const;

  // Keeps only `columns`, in the given order.
  LabeledDataset SelectColumns(std::span<const int> columns) const;

 private:
  int feature_count_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

struct DatasetSplit {
  LabeledDataset train;
  LabeledDataset test;
};

// Seeded shuffle followed by a cut; `test_fraction` of the rows (rounded
// half-up) go to the test side.
DatasetSplit TrainTestSplit(const LabeledDataset& data, double test_fraction,
                            uint64_t seed);

// CSV with header `f0,...,f{F-1},label`.
LabeledDataset LoadDatasetCsv(const std::filesystem::path& path);
void SaveDatasetCsv(const LabeledDataset& data,
                    const std::filesystem::path& path);

enum class Separation { kEasy, kMedium, kHard };

Separation ParseSeparation(const std::string& name);

struct SyntheticOptions {
  int feature_count = kDefaultFeatureCount;
  size_t rows = 6000;
  double malicious_fraction = 0.4;
  Separation separation = Separation::kEasy;
  uint64_t seed = 1;
};

// Two classes, each a mixture of two Gaussian components over the feature
// space. Half of the features carry a class-dependent mean shift whose
// size is set by the separation preset; the rest are shared noise.
LabeledDataset MakeSyntheticDataset(const SyntheticOptions& options);

}  // namespace distips

#endif  // DISTIPS_ENSEMBLE_DATASET_H_
