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

#include "distips/chain/chain_header.h"

#include <bit>
#include <string>

#include "distips/common/error.h"
#include "distips/ensemble/ensemble.h"

namespace distips {

namespace {

uint64_t LowMask(int n) {
  return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

class BitWriter {
 public:
  explicit BitWriter(size_t bytes) : out_(bytes, 0) {}

  void Put(uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) {
      if ((value >> b) & 1) out_[pos_ / 8] |= static_cast<uint8_t>(0x80u >> (pos_ % 8));
      ++pos_;
    }
  }

  std::vector<uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
  size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> in) : in_(in) {}

  uint64_t Get(int width) {
    uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
      v = (v << 1) | ((in_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
      ++pos_;
    }
    return v;
  }

  size_t position() const { return pos_; }

 private:
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace

int ChainHeader::IdWidth(int n) {
  if (n <= 1) return 1;
  return std::bit_width(static_cast<unsigned>(n - 1));  // ceil(log2 n)
}

size_t ChainHeader::EncodedBits(int n) {
  return static_cast<size_t>(n) * static_cast<size_t>(IdWidth(n)) + 2 * static_cast<size_t>(n);
}

ChainHeader ChainHeader::Empty(int n) {
  std::vector<uint32_t> ids(static_cast<size_t>(n > 0 ? n : 0));
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<uint32_t>(i);
  return ChainHeader(n, std::move(ids), 0, 0);
}

ChainHeader::ChainHeader(int n, std::vector<uint32_t> ids, uint64_t outputs,
                         uint64_t filled)
    : n_(n), ids_(std::move(ids)), outputs_(outputs), filled_(filled) {
  if (n < 1 || n > kMaxChainLearners) {
    throw InputError("chain length must be in [1, 64], got " + std::to_string(n));
  }
  if (ids_.size() != static_cast<size_t>(n)) {
    throw InputError("chain header needs exactly n ids");
  }
  const int width = IdWidth(n);
  for (uint32_t id : ids_) {
    if (width < 32 && id >> width) {
      throw InputError("wl id " + std::to_string(id) + " exceeds " +
                       std::to_string(width) + "-bit field");
    }
  }
  if ((outputs_ | filled_) & ~LowMask(n)) {
    throw InputError("output/mask bits set beyond slot n");
  }
}

bool ChainHeader::IsComplete() const { return filled_ == LowMask(n_); }

std::vector<uint8_t> EncodeHeader(const ChainHeader& h) {
  const int n = h.n();
  const int width = ChainHeader::IdWidth(n);
  BitWriter w(ChainHeader::EncodedBytes(n));
  for (uint32_t id : h.ids()) w.Put(id, width);
  for (int i = 0; i < n; ++i) w.Put(h.output(i), 1);
  for (int i = 0; i < n; ++i) w.Put(h.is_filled(i), 1);
  return w.Take();
}

ChainHeader DecodeHeader(std::span<const uint8_t> bytes, int n) {
  if (n < 1 || n > kMaxChainLearners) {
    throw InputError("chain length must be in [1, 64], got " + std::to_string(n));
  }
  if (bytes.size() != ChainHeader::EncodedBytes(n)) {
    throw InputError("chain header for n=" + std::to_string(n) + " must be " +
                     std::to_string(ChainHeader::EncodedBytes(n)) +
                     " bytes, got " + std::to_string(bytes.size()));
  }
  const int width = ChainHeader::IdWidth(n);
  BitReader r(bytes);
  std::vector<uint32_t> ids(static_cast<size_t>(n));
  for (auto& id : ids) id = static_cast<uint32_t>(r.Get(width));
  uint64_t outputs = 0;
  uint64_t filled = 0;
  for (int i = 0; i < n; ++i) outputs |= r.Get(1) << i;
  for (int i = 0; i < n; ++i) filled |= r.Get(1) << i;
  const int pad = static_cast<int>(bytes.size() * 8 - r.position());
  if (r.Get(pad) != 0) throw InputError("chain header padding bits are not zero");
  return ChainHeader(n, std::move(ids), outputs, filled);
}

ChainHeader AppendResult(const ChainHeader& h, uint32_t wl_id, bool vote) {
  for (int slot = 0; slot < h.n(); ++slot) {
    if (h.ids()[static_cast<size_t>(slot)] != wl_id) continue;
    if (h.is_filled(slot)) {
      throw InputError("weak learner " + std::to_string(wl_id) +
                       " already voted on this flow");
    }
    const uint64_t bit = uint64_t{1} << slot;
    return ChainHeader(h.n(), h.ids(), vote ? h.outputs() | bit : h.outputs() & ~bit,
                       h.filled() | bit);
  }
  throw InputError("no chain slot carries weak learner " + std::to_string(wl_id));
}

Verdict Finalize(const ChainHeader& h) {
  if (!h.IsComplete()) {
    throw InputError("chain header incomplete: " +
                     std::to_string(std::popcount(h.filled())) + " of " +
                     std::to_string(h.n()) + " votes present");
  }
  Verdict v;
  int malicious = 0;
  for (int slot = 0; slot < h.n(); ++slot) {
    v.votes.emplace_back(h.ids()[static_cast<size_t>(slot)], h.output(slot));
    malicious += h.output(slot);
  }
  v.malicious = MajorityVote(malicious, h.n());
  return v;
}

}  // namespace distips
