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

#ifndef FSIG_EQUILIBRIUM_H_
#define FSIG_EQUILIBRIUM_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fsig/game.h"

namespace fsig {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Utility-maximizing channel for user n with a_{-n} fixed. Ties keep the
// incumbent a_n when it is maximal, otherwise the lowest index wins.
ChannelIndex BestResponse(const Game& game, std::span<const ChannelIndex> alloc,
                          UserIndex n);

struct Deviation {
  UserIndex user;
  ChannelIndex better_channel;
  double utility_gain;  // strictly positive
};

struct PneReport {
  bool is_pne = true;
  // Every (user, channel) pair that strictly improves on the profile.
  std::vector<Deviation> violators;
};

PneReport VerifyPne(const Game& game, std::span<const ChannelIndex> alloc);

// Same test as VerifyPne without collecting witnesses.
bool IsPne(const Game& game, std::span<const ChannelIndex> alloc);

// Number of profiles K^N, saturating at UINT64_MAX.
std::uint64_t ProfileCount(int n_users, int n_channels);

// All PNE by exhaustive scan, in lexicographic profile order (user 0 most
// significant). Throws kBudgetExceeded when K^N > budget.
std::vector<Allocation> EnumeratePne(
    const Game& game, std::uint64_t budget = kDefaultEnumerationBudget);

enum class SearchSpace { kAllProfiles, kPermutationsOnly };

std::string_view SearchSpaceName(SearchSpace space);

struct PpoaResult {
  double max_w = 0.0;
  double min_pne_w = 0.0;
  double ppoa = 0.0;
  SearchSpace search_space = SearchSpace::kAllProfiles;
  std::size_t n_pne = 0;
};

// Pure price of anarchy. kAllProfiles takes the numerator from the full
// profile scan; kPermutationsOnly uses the interference-free optimal
// permutation instead. The denominator always comes from enumerated PNE.
// Throws kEmptyEquilibriumSet when the game has no PNE.
PpoaResult ComputePpoa(const Game& game, SearchSpace search_space,
                       std::uint64_t budget = kDefaultEnumerationBudget);

// Number of users whose channel is shared with at least one other user.
int CountSharingUsers(std::span<const ChannelIndex> alloc);

}  // namespace fsig

#endif  // FSIG_EQUILIBRIUM_H_
