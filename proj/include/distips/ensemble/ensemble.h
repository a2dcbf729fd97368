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

#ifndef DISTIPS_ENSEMBLE_ENSEMBLE_H_
#define DISTIPS_ENSEMBLE_ENSEMBLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "distips/ensemble/dataset.h"
#include "distips/ensemble/decision_tree.h"

namespace distips {

inline constexpr int kBundleFormatVersion = 1;

// Majority rule shared by the centralized model and the chain finalizer:
// malicious iff at least half of the `n` votes are malicious, so an exact
// tie (even n) is classified malicious.
inline bool MajorityVote(int votes_for_malicious, int n) {
  return 2 * votes_for_malicious >= n;
}

// round(ratio * feature_count), rounding halves up.
int SubsetSize(int feature_count, double ratio);

// One decision tree trained on a sorted feature subset. The tree indexes
// the projected (subset-local) vector.
struct WeakLearner {
  int wl_id = 0;
  std::vector<int> feature_subset;
  DecisionTree tree;

  // Evaluates on a full-width feature vector.
  TreePrediction PredictFull(std::span<const double> features) const;

  bool operator==(const WeakLearner&) const = default;
};

struct StrongLearner {
  int feature_count = kDefaultFeatureCount;
  int format_version = kBundleFormatVersion;
  std::vector<WeakLearner> learners;

  int size() const { return static_cast<int>(learners.size()); }

  // Throws InputError unless wl_ids are exactly {0..N-1} in order, N >= 1,
  // subsets are sorted, distinct, in range, and each tree fits its subset.
  void Validate() const;

  bool operator==(const StrongLearner&) const = default;
};

struct EnsembleOptions {
  int n_learners = 3;
  double subsample_ratio = 0.33;
  int max_depth = 7;
  uint64_t seed = 1;
};

// Trains `n_learners` trees, each on its own feature subset drawn without
// replacement from a per-learner seed stream. Subsets of different learners
// may overlap.
StrongLearner BuildDecomposedEnsemble(const LabeledDataset& data,
                                      const EnsembleOptions& options);

// Votes of every weak learner on a full-width vector, in wl_id order.
std::vector<int> CollectVotes(const StrongLearner& model,
                              std::span<const double> features);

int PredictMajority(const StrongLearner& model,
                    std::span<const double> features);

}  // namespace distips

#endif  // DISTIPS_ENSEMBLE_ENSEMBLE_H_
