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

#ifndef DISTIPS_ENSEMBLE_DECISION_TREE_H_
#define DISTIPS_ENSEMBLE_DECISION_TREE_H_

#include <span>
#include <vector>

#include "distips/ensemble/dataset.h"

namespace distips {

// A node is internal when `feature >= 0`; otherwise it is a leaf carrying
// `leaf_class`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_class = kBenign;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct TreePrediction {
  int label;
  int nodes_visited;  // internal nodes compared plus the leaf
};

// Binary classification tree stored in pre-order; node 0 is the root.
// Traversal goes left iff value <= threshold.
class DecisionTree {
 public:
  DecisionTree() = default;

  // Validates structure: single root, every node reachable exactly once,
  // children in range, and pre-order layout. Throws InputError.
  explicit DecisionTree(std::vector<TreeNode> nodes);

  static DecisionTree Leaf(int label);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const { return depth_; }

  // Smallest feature-vector length this tree can be evaluated on.
  int required_features() const { return required_features_; }

  int Predict(std::span<const double> features) const {
    return PredictTraced(features).label;
  }
  TreePrediction PredictTraced(std::span<const double> features) const;

  bool operator==(const DecisionTree& other) const {
    return nodes_ == other.nodes_;
  }

 private:
  std::vector<TreeNode> nodes_;
  int depth_ = 0;
  int required_features_ = 0;
};

// Greedy CART induction with Gini impurity. Candidate thresholds are the
// midpoints between consecutive distinct sorted values. Among splits of
// equal impurity the lowest feature index wins, then the lowest threshold.
// Leaves predict the majority label; an even split predicts malicious.
// Throws InputError on an empty dataset or max_depth < 1.
DecisionTree TrainTree(const LabeledDataset& data, int max_depth);

}  // namespace distips

#endif  // DISTIPS_ENSEMBLE_DECISION_TREE_H_
