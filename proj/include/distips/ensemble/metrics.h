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

#ifndef DISTIPS_ENSEMBLE_METRICS_H_
#define DISTIPS_ENSEMBLE_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "distips/ensemble/dataset.h"
#include "distips/ensemble/ensemble.h"

namespace distips {

struct ConfusionCounts {
  int64_t tp = 0;
  int64_t tn = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  int64_t total() const { return tp + tn + fp + fn; }
  void Add(int predicted, int truth);
  bool operator==(const ConfusionCounts&) const = default;
};

// Malicious is the positive class. A ratio with a zero denominator is
// reported as 0 and its name is listed in `undefined`.
struct ClassifierReport {
  ConfusionCounts counts;
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double fpr = 0;
  double fnr = 0;
  std::vector<std::string> undefined;
};

ClassifierReport ReportFromCounts(const ConfusionCounts& counts);

ClassifierReport Evaluate(std::span<const int> predicted,
                          std::span<const int> truth);

ClassifierReport EvaluateModel(const StrongLearner& model,
                               const LabeledDataset& data);

std::string FormatReport(const ClassifierReport& report);

}  // namespace distips

#endif  // DISTIPS_ENSEMBLE_METRICS_H_
