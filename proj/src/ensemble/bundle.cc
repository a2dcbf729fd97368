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

#include "distips/ensemble/bundle.h"

#include <fstream>
#include <sstream>

#include "distips/common/error.h"
#include "json.hpp"

namespace distips {

using nlohmann::json;

std::string BundleToJson(const StrongLearner& model) {
  json doc;
  doc["format_version"] = model.format_version;
  doc["feature_count"] = model.feature_count;
  doc["n_learners"] = model.size();
  doc["vote_rule"] = kVoteRuleName;
  json learners = json::array();
  for (const WeakLearner& wl : model.learners) {
    json nodes = json::array();
    for (const TreeNode& n : wl.tree.nodes()) {
      if (n.is_leaf()) {
        nodes.push_back({{"leaf", n.leaf_class}});
      } else {
        nodes.push_back(
            {{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right}});
      }
    }
    learners.push_back({{"wl_id", wl.wl_id},
                        {"feature_subset", wl.feature_subset},
                        {"nodes", std::move(nodes)}});
  }
  doc["learners"] = std::move(learners);
  return doc.dump(1) + "\n";
}

namespace {

const json& Field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw InputError(std::string("bundle: missing field '") + name + "'");
  }
  return *it;
}

int IntField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number_integer()) {
    throw InputError(std::string("bundle: field '") + name +
                     "' must be an integer");
  }
  return v.get<int>();
}

}  // namespace

StrongLearner BundleFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("bundle: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("bundle: top level must be an object");

  StrongLearner model;
  model.format_version = IntField(doc, "format_version");
  if (model.format_version != kBundleFormatVersion) {
    throw InputError("bundle: unsupported format_version " +
                     std::to_string(model.format_version) + " (expected " +
                     std::to_string(kBundleFormatVersion) + ")");
  }
  model.feature_count = IntField(doc, "feature_count");
  const int n_learners = IntField(doc, "n_learners");
  const json& rule = Field(doc, "vote_rule");
  if (!rule.is_string() || rule.get<std::string>() != kVoteRuleName) {
    throw InputError("bundle: unsupported vote_rule");
  }
  const json& learners = Field(doc, "learners");
  if (!learners.is_array() ||
      learners.size() != static_cast<size_t>(n_learners)) {
    throw InputError("bundle: learners array does not match n_learners");
  }
  for (const json& entry : learners) {
    WeakLearner wl;
    wl.wl_id = IntField(entry, "wl_id");
    const json& subset = Field(entry, "feature_subset");
    if (!subset.is_array()) throw InputError("bundle: feature_subset must be an array");
    for (const json& f : subset) {
      if (!f.is_number_integer()) throw InputError("bundle: feature index must be an integer");
      wl.feature_subset.push_back(f.get<int>());
    }
    const json& nodes = Field(entry, "nodes");
    if (!nodes.is_array()) throw InputError("bundle: nodes must be an array");
    std::vector<TreeNode> tree_nodes;
    tree_nodes.reserve(nodes.size());
    for (const json& n : nodes) {
      TreeNode node;
      if (n.contains("leaf")) {
        node.leaf_class = IntField(n, "leaf");
      } else {
        node.feature = IntField(n, "f");
        const json& t = Field(n, "t");
        if (!t.is_number()) throw InputError("bundle: threshold must be a number");
        node.threshold = t.get<double>();
        node.left = IntField(n, "l");
        node.right = IntField(n, "r");
        if (node.feature < 0) throw InputError("bundle: negative feature index");
      }
      tree_nodes.push_back(node);
    }
    wl.tree = DecisionTree(std::move(tree_nodes));
    model.learners.push_back(std::move(wl));
  }
  model.Validate();
  return model;
}

void SaveBundle(const StrongLearner& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << BundleToJson(model);
  if (!out) throw InputError("write failed for " + path.string());
}

StrongLearner LoadBundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open bundle " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return BundleFromJson(text.str());
}

}  // namespace distips
