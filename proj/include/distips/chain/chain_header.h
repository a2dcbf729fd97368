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

#ifndef DISTIPS_CHAIN_CHAIN_HEADER_H_
#define DISTIPS_CHAIN_CHAIN_HEADER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace distips {

inline constexpr int kMaxChainLearners = 64;

// In-band record of a weak-learner chain for an ensemble of N learners.
//
// Wire layout, most-significant bit first, zero-padded to a whole byte:
//
//   | id_1 | id_2 | ... | id_N | O_1 ... O_N | M_1 ... M_N | pad |
//
// Each id field is max(1, ceil(log2 N)) bits. O_i is the 1-bit vote of the
// learner in slot i and M_i marks O_i as valid.
class ChainHeader {
 public:
  // Slots carry ids 0..n-1 with no votes recorded.
  static ChainHeader Empty(int n);

  // Throws InputError if n is outside [1, 64], ids.size() != n, or an id
  // does not fit its field.
  ChainHeader(int n, std::vector<uint32_t> ids, uint64_t outputs,
              uint64_t filled);

  static int IdWidth(int n);
  static size_t EncodedBits(int n);
  static size_t EncodedBytes(int n) { return (EncodedBits(n) + 7) / 8; }

  int n() const { return n_; }
  const std::vector<uint32_t>& ids() const { return ids_; }
  uint64_t outputs() const { return outputs_; }
  uint64_t filled() const { return filled_; }

  bool output(int slot) const { return (outputs_ >> slot) & 1; }
  bool is_filled(int slot) const { return (filled_ >> slot) & 1; }
  bool IsComplete() const;

  // Output bits of unfilled slots are not meaningful, but they are carried
  // on the wire, so equality compares them too.
  bool operator==(const ChainHeader&) const = default;

 private:
  int n_;
  std::vector<uint32_t> ids_;
  uint64_t outputs_;  // bit i = O_{i+1}
  uint64_t filled_;   // bit i = M_{i+1}
};

std::vector<uint8_t> EncodeHeader(const ChainHeader& header);

// Throws InputError on a length that does not match n or nonzero padding.
ChainHeader DecodeHeader(std::span<const uint8_t> bytes, int n);

// Records `vote` for the slot carrying `wl_id`. Throws InputError if no
// slot carries the id or the slot was already filled (a mis-deployed chain).
ChainHeader AppendResult(const ChainHeader& header, uint32_t wl_id, bool vote);

struct Verdict {
  bool malicious = false;
  std::vector<std::pair<uint32_t, bool>> votes;  // (wl_id, vote), slot order
};

// Majority vote over a complete header, tie -> malicious. Throws
// InputError if any slot is unfilled (a broken chain).
Verdict Finalize(const ChainHeader& header);

}  // namespace distips

#endif  // DISTIPS_CHAIN_CHAIN_HEADER_H_
