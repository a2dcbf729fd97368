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

#include "distips/ensemble/metrics.h"

#include <cstdio>

#include "distips/common/error.h"

namespace distips {

void ConfusionCounts::Add(int predicted, int truth) {
  if (truth == kMalicious) {
    ++(predicted == kMalicious ? tp : fn);
  } else {
    ++(predicted == kMalicious ? fp : tn);
  }
}

namespace {

double Ratio(int64_t num, int64_t den, const char* name,
             std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassifierReport ReportFromCounts(const ConfusionCounts& c) {
  ClassifierReport r;
  r.counts = c;
  r.accuracy = Ratio(c.tp + c.tn, c.total(), "accuracy", r.undefined);
  r.precision = Ratio(c.tp, c.tp + c.fp, "precision", r.undefined);
  r.recall = Ratio(c.tp, c.tp + c.fn, "recall", r.undefined);
  if (r.precision + r.recall > 0) {
    r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.undefined.emplace_back("f1");
  }
  r.fpr = Ratio(c.fp, c.fp + c.tn, "fpr", r.undefined);
  r.fnr = Ratio(c.fn, c.fn + c.tp, "fnr", r.undefined);
  return r;
}

ClassifierReport Evaluate(std::span<const int> predicted,
                          std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw InputError("prediction and truth lengths differ");
  }
  ConfusionCounts c;
  for (size_t i = 0; i < truth.size(); ++i) c.Add(predicted[i], truth[i]);
  return ReportFromCounts(c);
}

ClassifierReport EvaluateModel(const StrongLearner& model,
                               const LabeledDataset& data) {
  if (data.empty()) throw InputError("cannot evaluate on an empty dataset");
  std::vector<int> predicted;
  predicted.reserve(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    predicted.push_back(PredictMajority(model, data.row(i)));
  }
  return Evaluate(predicted, data.labels());
}

std::string FormatReport(const ClassifierReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "accuracy=%.4f precision=%.4f recall=%.4f f1=%.4f fpr=%.4f "
                "fnr=%.4f (TP=%lld TN=%lld FP=%lld FN=%lld)",
                r.accuracy, r.precision, r.recall, r.f1, r.fpr, r.fnr,
                static_cast<long long>(r.counts.tp),
                static_cast<long long>(r.counts.tn),
                static_cast<long long>(r.counts.fp),
                static_cast<long long>(r.counts.fn));
  return buf;
}

}  // namespace distips
