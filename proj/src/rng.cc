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

#include "fsig/rng.h"

#include <bit>
#include <cmath>

#include "fsig/error.h"

namespace fsig {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
      return "invalid_config";
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kBudgetExceeded:
      return "budget_exceeded";
    case ErrorCode::kEmptyEquilibriumSet:
      return "empty_equilibrium_set";
    case ErrorCode::kIo:
      return "io_error";
  }
  return "unknown";
}

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t state = base_seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  SplitMix64(state);
  return SplitMix64(state);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = DeriveSeed(seed, stream);
  for (auto& word : s_) word = SplitMix64(state);
}

std::uint64_t Rng::NextU64() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Rng::UniformOpen01() {
  // 53 random bits centred in their cell: (j + 0.5) / 2^53.
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::UniformInt(std::uint64_t n) {
  if (n == 0) Fail(ErrorCode::kInvalidInput, "UniformInt requires n > 0");
  // Rejection sampling on the top of the range removes modulo bias.
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return x % n;
}

double Rng::Exponential() { return -std::log(UniformOpen01()); }

}  // namespace fsig
