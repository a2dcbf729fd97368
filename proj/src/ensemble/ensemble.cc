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

#include "distips/ensemble/ensemble.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "distips/common/error.h"
#include "distips/common/random.h"
#include "distips/flow/features.h"

namespace distips {

int SubsetSize(int feature_count, double ratio) {
  return static_cast<int>(std::floor(ratio * feature_count + 0.5));
}

TreePrediction WeakLearner::PredictFull(
    std::span<const double> features) const {
  const std::vector<double> local = ProjectFeatures(features, feature_subset);
  return tree.PredictTraced(local);
}

void StrongLearner::Validate() const {
  if (learners.empty()) throw InputError("model has no weak learners");
  if (feature_count <= 0) throw InputError("feature_count must be positive");
  for (size_t i = 0; i < learners.size(); ++i) {
    const WeakLearner& wl = learners[i];
    if (wl.wl_id != static_cast<int>(i)) {
      throw InputError("wl_ids must be exactly 0..N-1 in order; slot " +
                       std::to_string(i) + " has id " +
                       std::to_string(wl.wl_id));
    }
    const auto& subset = wl.feature_subset;
    if (subset.empty()) {
      throw InputError("weak learner " + std::to_string(i) +
                       " has an empty feature subset");
    }
    for (size_t k = 0; k < subset.size(); ++k) {
      if (subset[k] < 0 || subset[k] >= feature_count) {
        throw InputError("feature index " + std::to_string(subset[k]) +
                         " out of range");
      }
      if (k > 0 && subset[k] <= subset[k - 1]) {
        throw InputError("feature subset must be sorted and distinct");
      }
    }
    if (wl.tree.required_features() > static_cast<int>(subset.size())) {
      throw InputError("tree of weak learner " + std::to_string(i) +
                       " references a feature outside its subset");
    }
  }
}

StrongLearner BuildDecomposedEnsemble(const LabeledDataset& data,
                                      const EnsembleOptions& options) {
  if (options.n_learners < 1) throw InputError("need at least one learner");
  if (!(options.subsample_ratio > 0.0 && options.subsample_ratio <= 1.0)) {
    throw InputError("subsample ratio must be in (0, 1]");
  }
  const int f_count = data.feature_count();
  const int k = SubsetSize(f_count, options.subsample_ratio);
  if (options.subsample_ratio * f_count < 1.0 || k < 1) {
    throw InputError("subsample ratio selects no features");
  }

  StrongLearner model;
  model.feature_count = f_count;
  for (int i = 0; i < options.n_learners; ++i) {
    Rng rng(DeriveSeed(options.seed, static_cast<uint64_t>(i)));
    std::vector<int> pool(static_cast<size_t>(f_count));
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < k; ++j) {
      const size_t pick = static_cast<size_t>(j) + rng.Index(static_cast<size_t>(f_count - j));
      std::swap(pool[static_cast<size_t>(j)], pool[pick]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + k);
    std::sort(subset.begin(), subset.end());

    WeakLearner wl;
    wl.wl_id = i;
    wl.tree = TrainTree(data.SelectColumns(subset), options.max_depth);
    wl.feature_subset = std::move(subset);
    model.learners.push_back(std::move(wl));
  }
  return model;
}

std::vector<int> CollectVotes(const StrongLearner& model,
                              std::span<const double> features) {
  if (static_cast<int>(features.size()) != model.feature_count) {
    throw InputError("expected " + std::to_string(model.feature_count) +
                     " features, got " + std::to_string(features.size()));
  }
  std::vector<int> votes;
  votes.reserve(model.learners.size());
  for (const WeakLearner& wl : model.learners) {
    votes.push_back(wl.PredictFull(features).label);
  }
  return votes;
}

int PredictMajority(const StrongLearner& model,
                    std::span<const double> features) {
  const std::vector<int> votes = CollectVotes(model, features);
  const int malicious = static_cast<int>(std::count(votes.begin(), votes.end(), kMalicious));
  return MajorityVote(malicious, model.size()) ? kMalicious : kBenign;
}

}  // namespace distips
