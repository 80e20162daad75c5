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

#include "fsig/channel_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fsig/error.h"
#include "fsig/rng.h"

namespace fsig {

ChannelRealization ChannelRealization::Generate(int n_users, int n_channels,
                                                std::uint64_t seed) {
  if (n_users < 1 || n_channels < 1) {
    Fail(ErrorCode::kInvalidConfig,
         "realization needs n_users >= 1 and n_channels >= 1, got " +
             std::to_string(n_users) + "x" + std::to_string(n_channels));
  }
  Rng rng(seed, Stream::kChannelGains);
  std::vector<double> gains(static_cast<std::size_t>(n_users) * n_users *
                            n_channels);
  for (double& g : gains) g = rng.Exponential();
  return ChannelRealization(n_users, n_channels, seed, std::move(gains));
}

ChannelRealization ChannelRealization::FromGains(int n_users, int n_channels,
                                                 std::vector<double> gains) {
  if (n_users < 1 || n_channels < 1) {
    Fail(ErrorCode::kInvalidConfig, "realization dimensions must be positive");
  }
  if (gains.size() !=
      static_cast<std::size_t>(n_users) * n_users * n_channels) {
    Fail(ErrorCode::kInvalidInput, "gain tensor must hold N*N*K entries");
  }
  for (double g : gains) {
    if (!std::isfinite(g) || g < 0.0) {
      Fail(ErrorCode::kInvalidInput, "gains must be finite and non-negative");
    }
  }
  return ChannelRealization(n_users, n_channels, 0, std::move(gains));
}

ChannelRealization ChannelRealization::WithCrossGainsScaled(
    double factor) const {
  std::vector<double> gains = gains_;
  for (int tx = 0; tx < n_users_; ++tx) {
    for (int rx = 0; rx < n_users_; ++rx) {
      if (tx == rx) continue;
      for (int k = 0; k < n_channels_; ++k) {
        gains[(static_cast<std::size_t>(tx) * n_users_ + rx) * n_channels_ +
              k] *= factor;
      }
    }
  }
  return ChannelRealization(n_users_, n_channels_, seed_, std::move(gains));
}

OrderedChannels::OrderedChannels(const ChannelRealization& realization)
    : n_channels_(realization.n_channels()) {
  const int n_users = realization.n_users();
  order_.resize(n_users);
  sorted_gains_.resize(n_users);
  for (int n = 0; n < n_users; ++n) {
    auto& order = order_[n];
    order.resize(n_channels_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return realization.OwnGain(n, a) > realization.OwnGain(n, b);
    });
    sorted_gains_[n].reserve(n_channels_);
    for (int k : order) sorted_gains_[n].push_back(realization.OwnGain(n, k));
  }
}

double OrderedChannels::Ranked(UserIndex n, int i) const {
  if (i < 1 || i > n_channels_) {
    Fail(ErrorCode::kInvalidInput, "order statistic index out of range");
  }
  return sorted_gains_[n][n_channels_ - i];
}

double OrderedChannels::MthBestGain(UserIndex n, int m) const {
  if (m < 1 || m > n_channels_) {
    Fail(ErrorCode::kInvalidConfig,
         "M must lie in [1, K], got M=" + std::to_string(m));
  }
  return sorted_gains_[n][m - 1];
}

std::vector<ChannelIndex> BestMSet(const OrderedChannels& ordered, UserIndex n,
                                   int m) {
  if (m < 1 || m > ordered.n_channels()) {
    Fail(ErrorCode::kInvalidConfig,
         "M must lie in [1, K], got M=" + std::to_string(m) +
             " with K=" + std::to_string(ordered.n_channels()));
  }
  auto order = ordered.Order(n);
  std::vector<ChannelIndex> best(order.begin(), order.begin() + m);
  std::sort(best.begin(), best.end());
  return best;
}

PowerProfile PowerProfile::Uniform(int n_users, double power, double noise) {
  PowerProfile profile;
  profile.power.assign(n_users, power);
  profile.noise = noise;
  profile.weights.assign(n_users, 1.0);
  return profile;
}

void PowerProfile::RandomizeWeights(double lo, double hi, std::uint64_t seed) {
  if (!(lo > 0.0) || lo > hi) {
    Fail(ErrorCode::kInvalidConfig, "weights need 0 < w_min <= w_max");
  }
  w_min = lo;
  w_max = hi;
  Rng rng(seed, Stream::kWeights);
  for (double& w : weights) w = rng.Uniform(lo, hi);
}

void PowerProfile::Validate(int n_users) const {
  if (static_cast<int>(power.size()) != n_users ||
      static_cast<int>(weights.size()) != n_users) {
    Fail(ErrorCode::kInvalidConfig, "power profile size must equal n_users");
  }
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    Fail(ErrorCode::kInvalidConfig, "noise variance must be positive");
  }
  if (!(w_min > 0.0) || w_min > w_max) {
    Fail(ErrorCode::kInvalidConfig, "weights need 0 < w_min <= w_max");
  }
  for (double p : power) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      Fail(ErrorCode::kInvalidConfig, "transmit powers must be positive");
    }
  }
  for (double w : weights) {
    if (w < w_min || w > w_max) {
      Fail(ErrorCode::kInvalidConfig, "weight outside [w_min, w_max]");
    }
  }
}

double SnrToPower(double mean_snr_db, double noise) {
  if (!(noise > 0.0)) {
    Fail(ErrorCode::kInvalidConfig, "noise variance must be positive");
  }
  return noise * std::pow(10.0, mean_snr_db / 10.0);
}

}  // namespace fsig
