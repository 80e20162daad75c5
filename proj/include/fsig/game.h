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

#ifndef FSIG_GAME_H_
#define FSIG_GAME_H_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fsig/channel_model.h"

namespace fsig {

// Strategy profile: a[n] is the channel user n transmits on.
using Allocation = std::vector<ChannelIndex>;

enum class GameKind { kNaive, kMfsig };

std::string_view GameKindName(GameKind kind);
GameKind ParseGameKind(std::string_view name);

// Throws kInvalidInput unless alloc has n_users entries, each in [0, K).
void ValidateAllocation(std::span<const ChannelIndex> alloc, int n_users,
                        int n_channels);

// I_{n,k}: interference power at user n's receiver on channel k from every
// other user currently on k. Terms are summed in ascending transmitter order,
// so identical profiles always give bit-identical sums.
double Interference(const ChannelRealization& realization,
                    const PowerProfile& powers,
                    std::span<const ChannelIndex> alloc, UserIndex n,
                    ChannelIndex k);

// I_{n,k} for every channel k in one pass. Same summation order as
// Interference(), hence bit-identical per entry.
std::vector<double> InterferenceVector(const ChannelRealization& realization,
                                       const PowerProfile& powers,
                                       std::span<const ChannelIndex> alloc,
                                       UserIndex n);

// log2(1 + P_n |h_{n,k}|^2 / (N0 + I)): the achievable rate treating
// interference as noise.
double NaiveRate(const ChannelRealization& realization,
                 const PowerProfile& powers, UserIndex n, ChannelIndex k,
                 double interference);

double NaiveUtility(const ChannelRealization& realization,
                    const PowerProfile& powers,
                    std::span<const ChannelIndex> alloc, UserIndex n);

// W(a) = sum_n w_n * NaiveUtility(n). Always the true achievable rate,
// whichever game produced the allocation.
double WeightedSumRate(const ChannelRealization& realization,
                       const PowerProfile& powers,
                       std::span<const ChannelIndex> alloc);

double MinRate(const ChannelRealization& realization,
               const PowerProfile& powers, std::span<const ChannelIndex> alloc);

// Sufficient condition under which every permutation is a PNE of the naive
// game: for every user n,
//   min_k |h_{n,k}|^2 / N0 > max_l |h_{n,l}|^2 / (N0 + min_{m!=n} |h_{m,n,l}|^2 P_m).
// Throws kInvalidConfig for a single user.
bool StrongInterferenceHolds(const ChannelRealization& realization,
                             const PowerProfile& powers);

// A game instance: realization, powers, and utility rule. For the M-FSIG each
// user's utility is positive only on its M best channels, where it depends on
// interference alone through the M-th best gain.
class Game {
 public:
  // `m` is ignored for the naive game. Throws kInvalidConfig on bad M or a
  // power profile that does not fit the realization.
  Game(std::shared_ptr<const ChannelRealization> realization,
       PowerProfile powers, GameKind kind, int m = 0);

  static Game Naive(std::shared_ptr<const ChannelRealization> realization,
                    PowerProfile powers) {
    return Game(std::move(realization), std::move(powers), GameKind::kNaive);
  }
  static Game Mfsig(std::shared_ptr<const ChannelRealization> realization,
                    PowerProfile powers, int m) {
    return Game(std::move(realization), std::move(powers), GameKind::kMfsig, m);
  }

  GameKind kind() const { return kind_; }
  int m() const { return m_; }
  int n_users() const { return realization_->n_users(); }
  int n_channels() const { return realization_->n_channels(); }
  const ChannelRealization& realization() const { return *realization_; }
  const PowerProfile& powers() const { return powers_; }
  const OrderedChannels& ordered() const { return ordered_; }

  // Channels a user ever considers: the M-best set for the M-FSIG, every
  // channel for the naive game. Ascending order.
  std::span<const ChannelIndex> Strategies(UserIndex n) const {
    return strategies_[n];
  }
  bool InBestSet(UserIndex n, ChannelIndex k) const {
    return in_best_set_[static_cast<std::size_t>(n) * n_channels() + k];
  }

  // Utility user n would get on channel k under interference level I.
  double UtilityAt(UserIndex n, ChannelIndex k, double interference) const;

  double Utility(std::span<const ChannelIndex> alloc, UserIndex n) const;

  // Utility of user n on every channel with a_{-n} held fixed.
  std::vector<double> UtilityVector(std::span<const ChannelIndex> alloc,
                                    UserIndex n) const;

 private:
  std::shared_ptr<const ChannelRealization> realization_;
  PowerProfile powers_;
  OrderedChannels ordered_;
  GameKind kind_;
  int m_;
  std::vector<std::vector<ChannelIndex>> strategies_;
  std::vector<char> in_best_set_;
  std::vector<double> mth_best_gain_;
};

// M-FSIG utility; throws kInvalidConfig if `game` is not an M-FSIG.
double MfsigUtility(const Game& game, std::span<const ChannelIndex> alloc,
                    UserIndex n);

}  // namespace fsig

#endif  // FSIG_GAME_H_
