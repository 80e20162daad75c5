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

#ifndef FSIG_CHANNEL_MODEL_H_
#define FSIG_CHANNEL_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fsig {

// Channel and user indices are zero-based throughout the library.
using UserIndex = int;
using ChannelIndex = int;

// One network realization: squared channel magnitudes |h_{m,n,k}|^2 from
// transmitter m to receiver n on channel k. The diagonal m == n holds each
// user's own link gain. Immutable once built.
class ChannelRealization {
 public:
  // Draws every gain i.i.d. Exponential(1), i.e. unit-mean Rayleigh power
  // fading. Throws kInvalidConfig on zero dimensions.
  static ChannelRealization Generate(int n_users, int n_channels,
                                     std::uint64_t seed);

  // Builds a realization from an explicit tensor laid out as
  // gains[(tx * n_users + rx) * n_channels + k]. Entries must be finite and
  // non-negative.
  static ChannelRealization FromGains(int n_users, int n_channels,
                                      std::vector<double> gains);

  int n_users() const { return n_users_; }
  int n_channels() const { return n_channels_; }
  std::uint64_t seed() const { return seed_; }

  double Gain(UserIndex tx, UserIndex rx, ChannelIndex k) const {
    return gains_[(static_cast<std::size_t>(tx) * n_users_ + rx) * n_channels_ + k];
  }
  double OwnGain(UserIndex n, ChannelIndex k) const { return Gain(n, n, k); }

  std::span<const double> gains() const { return gains_; }

  // Copy with every cross gain (tx != rx) multiplied by `factor`.
  ChannelRealization WithCrossGainsScaled(double factor) const;

 private:
  ChannelRealization(int n_users, int n_channels, std::uint64_t seed,
                     std::vector<double> gains)
      : n_users_(n_users), n_channels_(n_channels), seed_(seed),
        gains_(std::move(gains)) {}

  int n_users_;
  int n_channels_;
  std::uint64_t seed_;
  std::vector<double> gains_;
};

// Per-user channel indices sorted by descending own gain. Ties (possible only
// through float collisions) go to the lower channel index.
class OrderedChannels {
 public:
  explicit OrderedChannels(const ChannelRealization& realization);

  int n_users() const { return static_cast<int>(order_.size()); }
  int n_channels() const { return n_channels_; }

  // Channel holding user n's rank-th best gain, rank 0 being the best.
  ChannelIndex ByRank(UserIndex n, int rank) const { return order_[n][rank]; }

  // Order statistic with 1-based i: Ranked(n, K) is the best gain and
  // Ranked(n, 1) the worst.
  double Ranked(UserIndex n, int i) const;

  // Gain of user n's M-th best channel, |h_{n,(K-M+1)}|^2.
  double MthBestGain(UserIndex n, int m) const;

  std::span<const ChannelIndex> Order(UserIndex n) const { return order_[n]; }

 private:
  int n_channels_;
  std::vector<std::vector<ChannelIndex>> order_;
  std::vector<std::vector<double>> sorted_gains_;
};

// Indices of user n's M best channels, in ascending channel order.
// Throws kInvalidConfig unless 1 <= M <= K.
std::vector<ChannelIndex> BestMSet(const OrderedChannels& ordered, UserIndex n,
                                   int m);

struct PowerProfile {
  std::vector<double> power;    // P_n, linear
  double noise = 1.0;           // N0, linear
  std::vector<double> weights;  // w_n
  double w_min = 1.0;
  double w_max = 1.0;

  static PowerProfile Uniform(int n_users, double power, double noise = 1.0);

  // Replaces the unit weights with draws uniform on [w_min, w_max].
  void RandomizeWeights(double w_min, double w_max, std::uint64_t seed);

  // Throws kInvalidConfig when any bound is violated or sizes disagree with
  // n_users.
  void Validate(int n_users) const;
};

// Transmit power reaching the requested mean SNR under unit-mean fading.
double SnrToPower(double mean_snr_db, double noise);

}  // namespace fsig

#endif  // FSIG_CHANNEL_MODEL_H_
