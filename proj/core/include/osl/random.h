// Copyright 2026 The OSL Authors.
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

#ifndef OSL_RANDOM_H_
#define OSL_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace osl {

// Seeded generator with platform-independent conversions (the standard
// distributions are implementation-defined, which would break byte-identical
// reruns across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  // Standard normal via Box-Muller.
  double Normal();
  // Uniform integer in [0, n).
  std::size_t Index(std::size_t n);
  // Fisher-Yates shuffle of [0, n).
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Splittable seed derivation (splitmix64 of seed and stream index) so that
// independent workers get independent, schedule-free streams.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace osl

#endif  // OSL_RANDOM_H_
