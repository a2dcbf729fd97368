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

#include "distips/ensemble/decision_tree.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "distips/common/error.h"

namespace distips {

DecisionTree::DecisionTree(std::vector<TreeNode> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InputError("tree has no nodes");
  const int n = static_cast<int>(nodes_.size());
  // Walking in pre-order must reproduce indices 0, 1, 2, ... exactly; that
  // rules out cycles, shared children, and unreachable nodes at once.
  int next = 0;
  int max_depth = 0;
  int max_feature = -1;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [index, d] = stack.back();
    stack.pop_back();
    if (index != next) {
      throw InputError("tree nodes are not a pre-order layout (expected node " +
                       std::to_string(next) + ", found " +
                       std::to_string(index) + ")");
    }
    ++next;
    max_depth = std::max(max_depth, d);
    const TreeNode& node = nodes_[static_cast<size_t>(index)];
    if (node.is_leaf()) {
      if (node.leaf_class != kBenign && node.leaf_class != kMalicious) {
        throw InputError("leaf class must be 0 or 1");
      }
      continue;
    }
    if (node.left <= index || node.left >= n || node.right <= index ||
        node.right >= n) {
      throw InputError("child index out of range at node " +
                       std::to_string(index));
    }
    max_feature = std::max(max_feature, node.feature);
    stack.emplace_back(node.right, d + 1);
    stack.emplace_back(node.left, d + 1);
  }
  if (next != n) throw InputError("tree has unreachable nodes");
  depth_ = max_depth;
  required_features_ = max_feature + 1;
}

DecisionTree DecisionTree::Leaf(int label) {
  TreeNode leaf;
  leaf.leaf_class = label;
  return DecisionTree({leaf});
}

TreePrediction DecisionTree::PredictTraced(
    std::span<const double> features) const {
  if (static_cast<int>(features.size()) < required_features_) {
    throw InputError("feature vector of length " +
                     std::to_string(features.size()) + " but tree uses index " +
                     std::to_string(required_features_ - 1));
  }
  int index = 0;
  int visited = 1;
  while (!nodes_[static_cast<size_t>(index)].is_leaf()) {
    const TreeNode& node = nodes_[static_cast<size_t>(index)];
    index = features[static_cast<size_t>(node.feature)] <= node.threshold
                ? node.left
                : node.right;
    ++visited;
  }
  return {nodes_[static_cast<size_t>(index)].leaf_class, visited};
}

namespace {

__extension__ typedef __int128 Wide;

// Split quality as the exact fraction S / (nl * nr) where
// S = (l0^2 + l1^2) * nr + (r0^2 + r1^2) * nl. Larger means lower
// weighted Gini, so comparing fractions exactly gives exact tie detection.
struct SplitScore {
  Wide numerator = 0;
  Wide denominator = 1;

  bool Beats(const SplitScore& other) const {
    return numerator * other.denominator > other.numerator * denominator;
  }
};

SplitScore Score(int64_t l0, int64_t l1, int64_t r0, int64_t r1) {
  const Wide nl = l0 + l1;
  const Wide nr = r0 + r1;
  return {(Wide(l0) * l0 + Wide(l1) * l1) * nr +
              (Wide(r0) * r0 + Wide(r1) * r1) * nl,
          nl * nr};
}

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  SplitScore score;
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, int max_depth)
      : data_(data), max_depth_(max_depth) {}

  std::vector<TreeNode> Build() {
    std::vector<size_t> rows(data_.size());
    std::iota(rows.begin(), rows.end(), size_t{0});
    Grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  void Grow(std::vector<size_t>& rows, int depth) {
    int64_t ones = 0;
    for (size_t r : rows) ones += data_.label(r);
    const int64_t zeros = static_cast<int64_t>(rows.size()) - ones;
    const int majority = ones >= zeros ? kMalicious : kBenign;

    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{.leaf_class = majority});
    if (ones == 0 || zeros == 0 || depth >= max_depth_) return;

    const BestSplit best = FindSplit(rows, zeros, ones);
    if (!best.found) return;

    std::vector<size_t> left;
    std::vector<size_t> right;
    for (size_t r : rows) {
      (data_.row(r)[static_cast<size_t>(best.feature)] <= best.threshold ? left : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[static_cast<size_t>(index)].feature = best.feature;
    nodes_[static_cast<size_t>(index)].threshold = best.threshold;
    nodes_[static_cast<size_t>(index)].left = static_cast<int>(nodes_.size());
    Grow(left, depth + 1);
    nodes_[static_cast<size_t>(index)].right = static_cast<int>(nodes_.size());
    Grow(right, depth + 1);
  }

  BestSplit FindSplit(const std::vector<size_t>& rows, int64_t zeros,
                      int64_t ones) {
    BestSplit best;
    column_.resize(rows.size());
    for (int f = 0; f < data_.feature_count(); ++f) {
      for (size_t i = 0; i < rows.size(); ++i) {
        column_[i] = {data_.row(rows[i])[static_cast<size_t>(f)],
                      data_.label(rows[i])};
      }
      std::sort(column_.begin(), column_.end());
      int64_t l0 = 0;
      int64_t l1 = 0;
      for (size_t i = 0; i + 1 < column_.size(); ++i) {
        (column_[i].second == kMalicious ? l1 : l0) += 1;
        const double lo = column_[i].first;
        const double hi = column_[i + 1].first;
        if (lo == hi) continue;
        const SplitScore score = Score(l0, l1, zeros - l0, ones - l1);
        // Strictly better only: scanning features and thresholds in
        // ascending order makes the first optimum the tie-break winner.
        if (!best.found || score.Beats(best.score)) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;  // adjacent doubles
          best = {true, f, mid, score};
        }
      }
    }
    return best;
  }

  const LabeledDataset& data_;
  const int max_depth_;
  std::vector<TreeNode> nodes_;
  std::vector<std::pair<double, int>> column_;
};

}  // namespace

DecisionTree TrainTree(const LabeledDataset& data, int max_depth) {
  if (data.empty()) throw InputError("cannot train a tree on an empty dataset");
  if (max_depth < 1) throw InputError("max_depth must be at least 1");
  return DecisionTree(TreeBuilder(data, max_depth).Build());
}

}  // namespace distips
