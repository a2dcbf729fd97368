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

#include "distips/ensemble/dataset.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "distips/common/error.h"
#include "distips/common/random.h"

namespace distips {

LabeledDataset::LabeledDataset(int feature_count)
    : feature_count_(feature_count) {
  if (feature_count <= 0) {
    throw InputError("dataset feature_count must be positive");
  }
}

void LabeledDataset::AddRow(std::span<const double> features, int label) {
  if (features.size() != static_cast<size_t>(feature_count_)) {
    throw InputError("row has " + std::to_string(features.size()) +
                     " features, expected " + std::to_string(feature_count_));
  }
  if (label != kBenign && label != kMalicious) {
    throw InputError("label must be 0 or 1, got " + std::to_string(label));
  }
  for (double v : features) {
    if (!std::isfinite(v)) throw InputError("non-finite feature value");
  }
  values_.insert(values_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

LabeledDataset LabeledDataset::SelectRows(std::span<const size_t> rows) const {
  LabeledDataset out(feature_count_);
  out.values_.reserve(rows.size() * static_cast<size_t>(feature_count_));
  out.labels_.reserve(rows.size());
  for (size_t r : rows) {
    auto src = row(r);
    out.values_.insert(out.values_.end(), src.begin(), src.end());
    out.labels_.push_back(labels_[r]);
  }
  return out;
}

LabeledDataset LabeledDataset::SelectColumns(
    std::span<const int> columns) const {
  if (columns.empty()) throw InputError("column selection is empty");
  for (int c : columns) {
    if (c < 0 || c >= feature_count_) {
      throw InputError("column index " + std::to_string(c) + " out of range");
    }
  }
  LabeledDataset out(static_cast<int>(columns.size()));
  out.values_.reserve(size() * columns.size());
  for (size_t r = 0; r < size(); ++r) {
    auto src = row(r);
    for (int c : columns) out.values_.push_back(src[static_cast<size_t>(c)]);
  }
  out.labels_ = labels_;
  return out;
}

DatasetSplit TrainTestSplit(const LabeledDataset& data, double test_fraction,
                            uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InputError("test_fraction must be in (0, 1)");
  }
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(DeriveSeed(seed, 0x5711));
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.Index(i)]);
  }
  const auto n_test = static_cast<size_t>(
      std::floor(test_fraction * static_cast<double>(data.size()) + 0.5));
  std::span<const size_t> all(order);
  return {data.SelectRows(all.subspan(n_test)),
          data.SelectRows(all.first(n_test))};
}

namespace {

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

double ParseDouble(std::string_view cell, size_t line_no) {
  double v = 0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InputError("line " + std::to_string(line_no) + ": bad number '" +
                     std::string(cell) + "'");
  }
  return v;
}

}  // namespace

LabeledDataset LoadDatasetCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("dataset is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCsvLine(line);
  if (header.size() < 2 || header.back() != "label") {
    throw InputError("dataset header must end with a 'label' column");
  }
  const int feature_count = static_cast<int>(header.size()) - 1;
  LabeledDataset data(feature_count);
  std::vector<double> row(static_cast<size_t>(feature_count));
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns");
    }
    for (int f = 0; f < feature_count; ++f) {
      row[static_cast<size_t>(f)] = ParseDouble(cells[static_cast<size_t>(f)], line_no);
    }
    const double label = ParseDouble(cells.back(), line_no);
    if (label != 0.0 && label != 1.0) {
      throw InputError("line " + std::to_string(line_no) + ": label must be 0 or 1");
    }
    data.AddRow(row, static_cast<int>(label));
  }
  if (data.empty()) throw InputError("dataset has no rows");
  return data;
}

void SaveDatasetCsv(const LabeledDataset& data,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (int f = 0; f < data.feature_count(); ++f) out << 'f' << f << ',';
  out << "label\n";
  char buf[64];
  for (size_t r = 0; r < data.size(); ++r) {
    for (double v : data.row(r)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.write(buf, ptr - buf);
      out << ',';
    }
    out << data.label(r) << '\n';
  }
}

Separation ParseSeparation(const std::string& name) {
  if (name == "easy") return Separation::kEasy;
  if (name == "medium") return Separation::kMedium;
  if (name == "hard") return Separation::kHard;
  throw InputError("unknown separation preset '" + name + "'");
}

LabeledDataset MakeSyntheticDataset(const SyntheticOptions& options) {
  const int f_count = options.feature_count;
  if (options.rows == 0) throw InputError("synthetic dataset needs rows");
  double shift = 0;
  switch (options.separation) {
    case Separation::kEasy: shift = 2.0; break;
    case Separation::kMedium: shift = 1.0; break;
    case Separation::kHard: shift = 0.4; break;
  }

  // Component means: index [class][component][feature].
  Rng layout(DeriveSeed(options.seed, 1));
  std::vector<double> direction(static_cast<size_t>(f_count), 0.0);
  for (int f = 0; f < f_count; f += 2) {
    direction[static_cast<size_t>(f)] = layout.Uniform01() < 0.5 ? -1.0 : 1.0;
  }
  std::vector<std::vector<std::vector<double>>> means(
      2, std::vector<std::vector<double>>(2, std::vector<double>(static_cast<size_t>(f_count))));
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < 2; ++k) {
      for (int f = 0; f < f_count; ++f) {
        const double jitter = 0.5 * (layout.Uniform01() - 0.5);
        const double sign = c == kMalicious ? 0.5 : -0.5;
        means[c][k][f] = sign * shift * direction[static_cast<size_t>(f)] + jitter;
      }
    }
  }

  LabeledDataset data(f_count);
  Rng rng(DeriveSeed(options.seed, 2));
  std::vector<double> row(static_cast<size_t>(f_count));
  for (size_t r = 0; r < options.rows; ++r) {
    const int label = rng.Uniform01() < options.malicious_fraction ? kMalicious : kBenign;
    const int component = rng.Uniform01() < 0.5 ? 0 : 1;
    for (int f = 0; f < f_count; ++f) {
      row[static_cast<size_t>(f)] = means[label][component][f] + rng.Normal();
    }
    data.AddRow(row, label);
  }
  return data;
}

}  // namespace distips
