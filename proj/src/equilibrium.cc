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

#include "fsig/equilibrium.h"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "fsig/assignment.h"
#include "fsig/error.h"

namespace fsig {

ChannelIndex BestResponse(const Game& game, std::span<const ChannelIndex> alloc,
                          UserIndex n) {
  ValidateAllocation(alloc, game.n_users(), game.n_channels());
  const std::vector<double> utility = game.UtilityVector(alloc, n);
  const ChannelIndex incumbent = alloc[n];
  ChannelIndex best = 0;
  for (int k = 1; k < game.n_channels(); ++k) {
    if (utility[k] > utility[best]) best = k;
  }
  if (!(utility[best] > utility[incumbent])) return incumbent;
  return best;
}

PneReport VerifyPne(const Game& game, std::span<const ChannelIndex> alloc) {
  ValidateAllocation(alloc, game.n_users(), game.n_channels());
  PneReport report;
  for (int n = 0; n < game.n_users(); ++n) {
    const std::vector<double> utility = game.UtilityVector(alloc, n);
    const double current = utility[alloc[n]];
    for (int k = 0; k < game.n_channels(); ++k) {
      if (utility[k] > current) {
        report.violators.push_back({n, k, utility[k] - current});
      }
    }
  }
  report.is_pne = report.violators.empty();
  return report;
}

bool IsPne(const Game& game, std::span<const ChannelIndex> alloc) {
  for (int n = 0; n < game.n_users(); ++n) {
    const std::vector<double> utility = game.UtilityVector(alloc, n);
    const double current = utility[alloc[n]];
    for (double u : utility) {
      if (u > current) return false;
    }
  }
  return true;
}

std::uint64_t ProfileCount(int n_users, int n_channels) {
  std::uint64_t count = 1;
  for (int i = 0; i < n_users; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / n_channels) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= n_channels;
  }
  return count;
}

namespace {

void CheckBudget(const Game& game, std::uint64_t budget) {
  const std::uint64_t count = ProfileCount(game.n_users(), game.n_channels());
  if (count > budget) {
    Fail(ErrorCode::kBudgetExceeded,
         "exhaustive scan needs K^N = " + std::to_string(count) +
             " profiles, budget is " + std::to_string(budget));
  }
}

// Visits every profile in lexicographic order.
template <typename Visitor>
void ForEachProfile(int n_users, int n_channels, Visitor&& visit) {
  Allocation alloc(n_users, 0);
  while (true) {
    visit(static_cast<const Allocation&>(alloc));
    int pos = n_users - 1;
    while (pos >= 0 && alloc[pos] == n_channels - 1) {
      alloc[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++alloc[pos];
  }
}

}  // namespace

std::vector<Allocation> EnumeratePne(const Game& game, std::uint64_t budget) {
  CheckBudget(game, budget);
  std::vector<Allocation> equilibria;
  ForEachProfile(game.n_users(), game.n_channels(),
                 [&](const Allocation& alloc) {
                   if (IsPne(game, alloc)) equilibria.push_back(alloc);
                 });
  return equilibria;
}

std::string_view SearchSpaceName(SearchSpace space) {
  return space == SearchSpace::kAllProfiles ? "all_profiles"
                                            : "permutations_only";
}

PpoaResult ComputePpoa(const Game& game, SearchSpace search_space,
                       std::uint64_t budget) {
  CheckBudget(game, budget);
  const ChannelRealization& realization = game.realization();
  const PowerProfile& powers = game.powers();

  PpoaResult result;
  result.search_space = search_space;
  result.max_w = -std::numeric_limits<double>::infinity();
  result.min_pne_w = std::numeric_limits<double>::infinity();
  ForEachProfile(game.n_users(), game.n_channels(),
                 [&](const Allocation& alloc) {
                   const double w = WeightedSumRate(realization, powers, alloc);
                   if (search_space == SearchSpace::kAllProfiles) {
                     result.max_w = std::max(result.max_w, w);
                   }
                   if (IsPne(game, alloc)) {
                     ++result.n_pne;
                     result.min_pne_w = std::min(result.min_pne_w, w);
                   }
                 });
  if (result.n_pne == 0) {
    Fail(ErrorCode::kEmptyEquilibriumSet,
         "game has no pure Nash equilibrium (empty E_p)");
  }
  if (search_space == SearchSpace::kPermutationsOnly) {
    result.max_w =
        OptimalPermutation(InterferenceFreeRateMatrix(realization, powers))
            .value;
  }
  result.ppoa = result.max_w / result.min_pne_w;
  return result;
}

int CountSharingUsers(std::span<const ChannelIndex> alloc) {
  std::unordered_map<ChannelIndex, int> occupancy;
  for (ChannelIndex k : alloc) ++occupancy[k];
  int sharing = 0;
  for (ChannelIndex k : alloc) {
    if (occupancy[k] >= 2) ++sharing;
  }
  return sharing;
}

}  // namespace fsig
