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

#ifndef DISTIPS_COMMON_RANDOM_H_
#define DISTIPS_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace distips {

// Mixes a base seed with a stream index (splitmix64 finalizer) so that
// independent consumers get decorrelated engines from one user seed.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Seeded generator with distributions implemented on top of the raw engine
// output. std::*_distribution results differ between standard libraries;
// these do not, so traces and plans are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of randomness.
  double Uniform01();

  // Uniform integer in [lo, hi], both inclusive. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Uniform index in [0, n). Requires n > 0.
  size_t Index(size_t n) { return static_cast<size_t>(UniformInt(0, static_cast<int64_t>(n) - 1)); }

  // Exponential with the given rate (mean 1 / rate).
  double Exponential(double rate);

  // Standard normal via Box-Muller; one value per call.
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace distips

#endif  // DISTIPS_COMMON_RANDOM_H_
