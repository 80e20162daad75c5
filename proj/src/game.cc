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

#include "fsig/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsig/error.h"

namespace fsig {

std::string_view GameKindName(GameKind kind) {
  return kind == GameKind::kNaive ? "naive" : "mfsig";
}

GameKind ParseGameKind(std::string_view name) {
  if (name == "naive") return GameKind::kNaive;
  if (name == "mfsig") return GameKind::kMfsig;
  Fail(ErrorCode::kInvalidConfig,
       "unknown game kind '" + std::string(name) + "' (naive|mfsig)");
}

void ValidateAllocation(std::span<const ChannelIndex> alloc, int n_users,
                        int n_channels) {
  if (static_cast<int>(alloc.size()) != n_users) {
    Fail(ErrorCode::kInvalidInput,
         "allocation has " + std::to_string(alloc.size()) +
             " entries, expected " + std::to_string(n_users));
  }
  for (ChannelIndex k : alloc) {
    if (k < 0 || k >= n_channels) {
      Fail(ErrorCode::kInvalidInput,
           "channel index " + std::to_string(k) + " outside [0, " +
               std::to_string(n_channels) + ")");
    }
  }
}

double Interference(const ChannelRealization& realization,
                    const PowerProfile& powers,
                    std::span<const ChannelIndex> alloc, UserIndex n,
                    ChannelIndex k) {
  double sum = 0.0;
  for (int m = 0; m < static_cast<int>(alloc.size()); ++m) {
    if (m == n || alloc[m] != k) continue;
    sum += realization.Gain(m, n, k) * powers.power[m];
  }
  return sum;
}

std::vector<double> InterferenceVector(const ChannelRealization& realization,
                                       const PowerProfile& powers,
                                       std::span<const ChannelIndex> alloc,
                                       UserIndex n) {
  std::vector<double> sums(realization.n_channels(), 0.0);
  for (int m = 0; m < static_cast<int>(alloc.size()); ++m) {
    if (m == n) continue;
    const ChannelIndex k = alloc[m];
    sums[k] += realization.Gain(m, n, k) * powers.power[m];
  }
  return sums;
}

double NaiveRate(const ChannelRealization& realization,
                 const PowerProfile& powers, UserIndex n, ChannelIndex k,
                 double interference) {
  return std::log2(1.0 + powers.power[n] * realization.OwnGain(n, k) /
                             (powers.noise + interference));
}

double NaiveUtility(const ChannelRealization& realization,
                    const PowerProfile& powers,
                    std::span<const ChannelIndex> alloc, UserIndex n) {
  const ChannelIndex k = alloc[n];
  return NaiveRate(realization, powers, n, k,
                   Interference(realization, powers, alloc, n, k));
}

double WeightedSumRate(const ChannelRealization& realization,
                       const PowerProfile& powers,
                       std::span<const ChannelIndex> alloc) {
  ValidateAllocation(alloc, realization.n_users(), realization.n_channels());
  double total = 0.0;
  for (int n = 0; n < realization.n_users(); ++n) {
    total += powers.weights[n] * NaiveUtility(realization, powers, alloc, n);
  }
  return total;
}

double MinRate(const ChannelRealization& realization,
               const PowerProfile& powers,
               std::span<const ChannelIndex> alloc) {
  ValidateAllocation(alloc, realization.n_users(), realization.n_channels());
  double lowest = std::numeric_limits<double>::infinity();
  for (int n = 0; n < realization.n_users(); ++n) {
    lowest = std::min(lowest, NaiveUtility(realization, powers, alloc, n));
  }
  return lowest;
}

bool StrongInterferenceHolds(const ChannelRealization& realization,
                             const PowerProfile& powers) {
  const int n_users = realization.n_users();
  const int n_channels = realization.n_channels();
  if (n_users < 2) {
    Fail(ErrorCode::kInvalidConfig,
         "strong interference condition needs at least two users");
  }
  const double n0 = powers.noise;
  for (int n = 0; n < n_users; ++n) {
    double weakest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_channels; ++k) {
      weakest = std::min(weakest, realization.OwnGain(n, k));
    }
    const double lhs = weakest / n0;
    double rhs = 0.0;
    for (int l = 0; l < n_channels; ++l) {
      double min_cross = std::numeric_limits<double>::infinity();
      for (int m = 0; m < n_users; ++m) {
        if (m == n) continue;
        min_cross = std::min(min_cross, realization.Gain(m, n, l) * powers.power[m]);
      }
      rhs = std::max(rhs, realization.OwnGain(n, l) / (n0 + min_cross));
    }
    if (!(lhs > rhs)) return false;
  }
  return true;
}

Game::Game(std::shared_ptr<const ChannelRealization> realization,
           PowerProfile powers, GameKind kind, int m)
    : realization_(std::move(realization)),
      powers_(std::move(powers)),
      ordered_(*realization_),
      kind_(kind),
      m_(kind == GameKind::kNaive ? realization_->n_channels() : m) {
  const int n_users = realization_->n_users();
  const int n_channels = realization_->n_channels();
  powers_.Validate(n_users);
  if (m_ < 1 || m_ > n_channels) {
    Fail(ErrorCode::kInvalidConfig,
         "M-FSIG needs 1 <= M <= K, got M=" + std::to_string(m) +
             " with K=" + std::to_string(n_channels));
  }
  strategies_.reserve(n_users);
  in_best_set_.assign(static_cast<std::size_t>(n_users) * n_channels, 0);
  mth_best_gain_.reserve(n_users);
  for (int n = 0; n < n_users; ++n) {
    strategies_.push_back(BestMSet(ordered_, n, m_));
    for (ChannelIndex k : strategies_.back()) {
      in_best_set_[static_cast<std::size_t>(n) * n_channels + k] = 1;
    }
    mth_best_gain_.push_back(ordered_.MthBestGain(n, m_));
  }
}

double Game::UtilityAt(UserIndex n, ChannelIndex k, double interference) const {
  if (kind_ == GameKind::kNaive) {
    return NaiveRate(*realization_, powers_, n, k, interference);
  }
  if (!InBestSet(n, k)) return 0.0;
  return std::log2(1.0 + powers_.power[n] * mth_best_gain_[n] /
                             (powers_.noise + interference));
}

double Game::Utility(std::span<const ChannelIndex> alloc, UserIndex n) const {
  const ChannelIndex k = alloc[n];
  return UtilityAt(n, k, Interference(*realization_, powers_, alloc, n, k));
}

std::vector<double> Game::UtilityVector(std::span<const ChannelIndex> alloc,
                                        UserIndex n) const {
  std::vector<double> values =
      InterferenceVector(*realization_, powers_, alloc, n);
  for (int k = 0; k < n_channels(); ++k) values[k] = UtilityAt(n, k, values[k]);
  return values;
}

double MfsigUtility(const Game& game, std::span<const ChannelIndex> alloc,
                    UserIndex n) {
  if (game.kind() != GameKind::kMfsig) {
    Fail(ErrorCode::kInvalidConfig, "MfsigUtility called on a naive game");
  }
  return game.Utility(alloc, n);
}

}  // namespace fsig
