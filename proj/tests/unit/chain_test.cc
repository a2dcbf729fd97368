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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "distips/chain/chain_header.h"
#include "distips/common/error.h"
#include "distips/common/random.h"
#include "distips/ensemble/ensemble.h"
#include "oracles.h"

namespace distips {
namespace {

using Bytes = std::vector<uint8_t>;

TEST(ChainHeader, IdWidthAndLength) {
  EXPECT_EQ(ChainHeader::IdWidth(1), 1);
  EXPECT_EQ(ChainHeader::IdWidth(2), 1);
  EXPECT_EQ(ChainHeader::IdWidth(3), 2);
  EXPECT_EQ(ChainHeader::IdWidth(4), 2);
  EXPECT_EQ(ChainHeader::IdWidth(5), 3);
  EXPECT_EQ(ChainHeader::IdWidth(16), 4);
  EXPECT_EQ(ChainHeader::IdWidth(17), 5);
  for (int n = 1; n <= 64; ++n) {
    int w = 0;
    while ((1 << w) < n) ++w;
    w = std::max(1, w);
    EXPECT_EQ(ChainHeader::EncodedBytes(n), static_cast<size_t>((n * w + 2 * n + 7) / 8)) << n;
  }
}

TEST(ChainHeader, HandPackedExamples) {
  // 00 01 10 | 101 | 111 | 0000
  EXPECT_EQ(EncodeHeader(ChainHeader(3, {0, 1, 2}, 0b101, 0b111)), (Bytes{0x1A, 0xF0}));
  // 0 | 1 | 1 | 00000
  EXPECT_EQ(EncodeHeader(ChainHeader(1, {0}, 1, 1)), (Bytes{0x60}));
  EXPECT_EQ(EncodeHeader(ChainHeader(1, {0}, 0, 1)), (Bytes{0x20}));
}

TEST(ChainHeader, IdTooWideIsRejected) {
  EXPECT_THROW(ChainHeader(3, {0, 1, 4}, 0, 0), InputError);
  EXPECT_THROW(ChainHeader(1, {2}, 0, 0), InputError);
  EXPECT_THROW(ChainHeader(3, {0, 1}, 0, 0), InputError);
  EXPECT_THROW(ChainHeader(3, {0, 1, 2}, 0b1000, 0), InputError);
}

TEST(ChainHeader, DecodeExamples) {
  const ChainHeader h(3, {0, 1, 2}, 0b101, 0b111);
  const Bytes b = EncodeHeader(h);
  EXPECT_EQ(DecodeHeader(b, 3), h);
  EXPECT_THROW(DecodeHeader(Bytes{0xFF}, 3), InputError);
  EXPECT_THROW(DecodeHeader(Bytes{0x1A, 0xF1}, 3), InputError);  // pad bit set
  EXPECT_THROW(DecodeHeader(Bytes{0x60, 0x00}, 1), InputError);
}

TEST(ChainHeader, ExhaustiveRoundTripSmallN) {
  for (int n = 1; n <= 3; ++n) {
    const int w = ChainHeader::IdWidth(n);
    const uint64_t id_space = uint64_t{1} << (w * n);
    for (uint64_t packed = 0; packed < id_space; ++packed) {
      std::vector<uint32_t> ids;
      for (int i = 0; i < n; ++i) ids.push_back(static_cast<uint32_t>((packed >> (w * i)) & ((1u << w) - 1)));
      for (uint64_t out = 0; out < (1u << n); ++out) {
        for (uint64_t mask = 0; mask < (1u << n); ++mask) {
          const ChainHeader h(n, ids, out, mask);
          ASSERT_EQ(DecodeHeader(EncodeHeader(h), n), h);
        }
      }
    }
  }
}

TEST(Chain, AppendAndFinalize) {
  ChainHeader h = ChainHeader::Empty(3);
  h = AppendResult(h, 1, true);
  EXPECT_EQ(h.filled(), 0b010u);
  EXPECT_TRUE(h.output(1));
  EXPECT_FALSE(h.IsComplete());
  EXPECT_THROW(AppendResult(h, 1, false), InputError);
  EXPECT_THROW(Finalize(h), InputError);
  h = AppendResult(AppendResult(h, 0, true), 2, false);
  EXPECT_TRUE(h.IsComplete());
  const Verdict v = Finalize(h);
  EXPECT_TRUE(v.malicious);
  ASSERT_EQ(v.votes.size(), 3u);
  EXPECT_EQ(v.votes[2], (std::pair<uint32_t, bool>{2, false}));
  EXPECT_FALSE(Finalize(ChainHeader(3, {0, 1, 2}, 0, 0b111)).malicious);
  EXPECT_THROW(Finalize(ChainHeader(3, {0, 1, 2}, 0b011, 0b011)), InputError);
  EXPECT_THROW(AppendResult(ChainHeader::Empty(3), 3, true), InputError);
}

TEST(Chain, AppendLeavesOtherSlotsAlone) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(rng.UniformInt(1, 16));
    ChainHeader h = ChainHeader::Empty(n);
    const int slot = static_cast<int>(rng.Index(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
      if (i != slot && rng.Uniform01() < 0.5) h = AppendResult(h, static_cast<uint32_t>(i), rng.Uniform01() < 0.5);
    }
    const ChainHeader after = AppendResult(h, static_cast<uint32_t>(slot), true);
    const uint64_t bit = uint64_t{1} << slot;
    EXPECT_EQ(after.filled(), h.filled() | bit);
    EXPECT_EQ(after.outputs() & ~bit, h.outputs() & ~bit);
    EXPECT_EQ(after.ids(), h.ids());
  }
}

TEST(Chain, EqualsCentralizedVoteInAnyOrder) {
  Rng rng(17);
  for (int n : {1, 2, 3, 4, 5}) {
    const StrongLearner m = oracle::RandomEnsemble(rng, n, 7, 72, 24);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(72);
      for (double& v : x) v = rng.Uniform01();
      const std::vector<int> votes = CollectVotes(m, x);
      std::vector<int> order(static_cast<size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.Index(i)]);
      ChainHeader h = ChainHeader::Empty(n);
      for (int wl : order) {
        // Serialize between hops as a real chain would.
        h = DecodeHeader(EncodeHeader(h), n);
        h = AppendResult(h, static_cast<uint32_t>(wl), votes[static_cast<size_t>(wl)] == kMalicious);
      }
      ASSERT_EQ(Finalize(h).malicious ? kMalicious : kBenign, PredictMajority(m, x));
    }
  }
}

uint64_t Bits(const std::string& s) {
  uint64_t v = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v |= uint64_t{1} << i;
  }
  return v;
}

TEST(Chain, ShippedConformanceVectors) {
  std::ifstream in(std::string(DISTIPS_DATA_DIR) + "/chain_header_vectors.csv");
  ASSERT_TRUE(in) << "missing conformance vectors";
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,ids,outputs,mask,hex");
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string n_s, ids_s, out_s, mask_s, hex;
    std::getline(row, n_s, ',');
    std::getline(row, ids_s, ',');
    std::getline(row, out_s, ',');
    std::getline(row, mask_s, ',');
    std::getline(row, hex, ',');
    const int n = std::stoi(n_s);
    std::vector<uint32_t> ids;
    std::stringstream id_stream(ids_s);
    for (uint32_t id; id_stream >> id;) ids.push_back(id);
    Bytes bytes;
    for (size_t i = 0; i + 1 < hex.size(); i += 2) {
      bytes.push_back(static_cast<uint8_t>(std::stoul(hex.substr(i, 2), nullptr, 16)));
    }
    const ChainHeader h(n, ids, Bits(out_s), Bits(mask_s));
    EXPECT_EQ(EncodeHeader(h), bytes) << line;
    EXPECT_EQ(DecodeHeader(bytes, n), h) << line;
    ++rows;
  }
  EXPECT_GE(rows, 100);
}

}  // namespace
}  // namespace distips
