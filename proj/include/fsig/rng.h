// Copyright 2026 The FSIG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FSIG_RNG_H_
#define FSIG_RNG_H_

#include <array>
#include <cstdint>
#include <string_view>

namespace fsig {

// Name and version of the generator. Any change to the bit stream produced
// for a given (seed, stream) pair must bump the version.
inline constexpr std::string_view kRngName = "xoshiro256**+splitmix64";
inline constexpr int kRngVersion = 1;

// Reserved stream ids. Each consumer of randomness for one realization draws
// from its own stream so that adding draws in one place never shifts another.
enum class Stream : std::uint64_t {
  kChannelGains = 0,
  kRandomPermutation = 1,
  kWeights = 2,
  kDynamics = 0x100,  // + user index
};

std::uint64_t SplitMix64(std::uint64_t& state);

// Mixes a base seed and an index into an independent child seed.
std::uint64_t DeriveSeed(std::uint64_t base_seed, std::uint64_t index);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  Rng(std::uint64_t seed, Stream stream)
      : Rng(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t NextU64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double UniformOpen01();

  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t UniformInt(std::uint64_t n);

  // Exponential with unit mean. Always finite and strictly positive.
  double Exponential();

  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformOpen01(); }

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace fsig

#endif  // FSIG_RNG_H_
