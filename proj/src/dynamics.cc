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

#include "fsig/dynamics.h"

#include <cmath>
#include <string>

#include "fsig/error.h"
#include "json.hpp"

namespace fsig {

void DynamicsConfig::Validate() const {
  if (alpha.kind == StepSize::Kind::kConstant &&
      !(alpha.value > 0.0 && alpha.value <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "constant alpha must lie in (0, 1]");
  }
  if (tau < 0) Fail(ErrorCode::kInvalidConfig, "tau must be >= 0");
  if (t_max < 1) Fail(ErrorCode::kInvalidConfig, "t_max must be >= 1");
}

namespace {

ChannelIndex DrawStrategy(const Game& game, UserIndex n, Rng& rng) {
  const auto strategies = game.Strategies(n);
  return strategies[rng.UniformInt(strategies.size())];
}

// Position of `channel` within the user's strategy list.
int SlotOf(std::span<const ChannelIndex> strategies, ChannelIndex channel) {
  for (int i = 0; i < static_cast<int>(strategies.size()); ++i) {
    if (strategies[i] == channel) return i;
  }
  return -1;
}

// argmax over slots; the incumbent wins any tie it is part of, otherwise the
// lowest channel (slots are in ascending channel order).
ChannelIndex ArgmaxWithIncumbent(std::span<const ChannelIndex> strategies,
                                 std::span<const double> values,
                                 ChannelIndex incumbent) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[best]) best = i;
  }
  const int held = SlotOf(strategies, incumbent);
  if (held >= 0 && !(values[best] > values[held])) return incumbent;
  return strategies[best];
}

IterationRecord MakeRecord(const Game& game, int t, const Allocation& alloc,
                           int resets) {
  IterationRecord record;
  record.t = t;
  record.alloc = alloc;
  record.sum_rate = WeightedSumRate(game.realization(), game.powers(), alloc);
  record.min_rate = MinRate(game.realization(), game.powers(), alloc);
  record.n_sharing = CountSharingUsers(alloc);
  record.is_pne = IsPne(game, alloc);
  record.resets = resets;
  return record;
}

void Summarize(Trajectory& trajectory) {
  const auto& records = trajectory.records;
  trajectory.resets = records.empty() ? 0 : records.back().resets;
  trajectory.first_pne_t.reset();
  trajectory.held_after_first_pne = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].is_pne) continue;
    trajectory.first_pne_t = records[i].t;
    bool held = true;
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[j].alloc != records[i].alloc) {
        held = false;
        break;
      }
    }
    trajectory.held_after_first_pne = held;
    break;
  }
  trajectory.converged_t.reset();
  if (!records.empty() && records.back().is_pne) {
    std::size_t start = records.size() - 1;
    while (start > 0 && records[start - 1].alloc == records.back().alloc) {
      --start;
    }
    trajectory.converged_t = records[start].t;
  }
  trajectory.status = trajectory.converged_t
                          ? TerminalStatus::kConvergedToPne
                          : TerminalStatus::kIterationCapReached;
}

}  // namespace

FpState MfpInit(const Game& game, std::uint64_t seed) {
  const int n_users = game.n_users();
  FpState state;
  state.local_t.assign(n_users, 0);
  state.u_bar.resize(n_users);
  state.interference.resize(n_users);
  state.prev_interference.resize(n_users);
  state.last_alloc.resize(n_users);
  state.rngs.reserve(n_users);
  for (int n = 0; n < n_users; ++n) {
    const std::size_t size = game.Strategies(n).size();
    state.u_bar[n].assign(size, 0.0);
    state.interference[n].assign(size, 0.0);
    state.prev_interference[n].assign(size, 0.0);
    state.rngs.emplace_back(
        seed, static_cast<std::uint64_t>(Stream::kDynamics) + n);
    state.last_alloc[n] = DrawStrategy(game, n, state.rngs.back());
  }
  return state;
}

void MfpStep(FpState& state, const Game& game, const DynamicsConfig& config) {
  const int n_users = game.n_users();
  ++state.t;

  Allocation alloc(n_users);
  for (int n = 0; n < n_users; ++n) {
    alloc[n] = ArgmaxWithIncumbent(game.Strategies(n), state.u_bar[n],
                                   state.last_alloc[n]);
  }

  for (int n = 0; n < n_users; ++n) {
    ++state.local_t[n];
    const auto strategies = game.Strategies(n);
    const std::vector<double> sensed =
        InterferenceVector(game.realization(), game.powers(), alloc, n);
    std::swap(state.prev_interference[n], state.interference[n]);
    auto& current = state.interference[n];
    auto& u_bar = state.u_bar[n];
    const double alpha = config.alpha.At(state.local_t[n]);
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      const ChannelIndex k = strategies[i];
      current[i] = sensed[k];
      u_bar[i] = (1.0 - alpha) * u_bar[i] + alpha * game.UtilityAt(n, k, sensed[k]);
    }
  }
  state.last_alloc = std::move(alloc);
}

int MfpResetCheck(FpState& state, const Game& game,
                  const DynamicsConfig& config) {
  if (config.tau <= 0) return 0;
  if (config.reset_schedule == ResetSchedule::kOneShot &&
      state.t != config.tau) {
    return 0;
  }
  int reset_count = 0;
  for (int n = 0; n < game.n_users(); ++n) {
    if (config.reset_schedule == ResetSchedule::kRecurring &&
        (state.local_t[n] == 0 || state.local_t[n] % config.tau != 0)) {
      continue;
    }
    // Exact comparison: identical profiles give bit-identical sums.
    if (state.interference[n] == state.prev_interference[n]) continue;
    std::fill(state.u_bar[n].begin(), state.u_bar[n].end(), 0.0);
    state.local_t[n] = 0;
    state.last_alloc[n] = DrawStrategy(game, n, state.rngs[n]);
    ++reset_count;
  }
  state.resets += reset_count;
  return reset_count;
}

std::string_view TerminalStatusName(TerminalStatus status) {
  return status == TerminalStatus::kConvergedToPne ? "converged_to_pne"
                                                   : "iteration_cap_reached";
}

Trajectory RunDynamics(const Game& game, const DynamicsConfig& config,
                       std::uint64_t seed) {
  config.Validate();
  FpState state = MfpInit(game, seed);
  Trajectory trajectory;
  trajectory.records.reserve(config.t_max);
  for (int t = 1; t <= config.t_max; ++t) {
    MfpStep(state, game, config);
    // The record holds the profile played this round; a reset only changes
    // what is played next.
    Allocation played = state.last_alloc;
    MfpResetCheck(state, game, config);
    trajectory.records.push_back(MakeRecord(game, t, played, state.resets));
    const auto& records = trajectory.records;
    if (config.stop_at_pne && records.size() >= 2 && records.back().is_pne &&
        records[records.size() - 2].alloc == records.back().alloc) {
      break;
    }
  }
  Summarize(trajectory);
  return trajectory;
}

Trajectory RunJointFpReference(const Game& game, int t_max, std::uint64_t seed,
                               std::uint64_t budget) {
  if (t_max < 1) Fail(ErrorCode::kInvalidConfig, "t_max must be >= 1");
  const int n_users = game.n_users();
  const int n_channels = game.n_channels();
  const std::uint64_t rival_profiles = ProfileCount(n_users - 1, n_channels);
  if (rival_profiles > budget) {
    Fail(ErrorCode::kBudgetExceeded,
         "joint FP reference needs K^(N-1) = " +
             std::to_string(rival_profiles) + " rival profiles, budget is " +
             std::to_string(budget));
  }

  // Rival profile i of user n encodes a_{-n} in base K, lower users first.
  auto rival_index = [&](const Allocation& alloc, UserIndex n) {
    std::uint64_t index = 0;
    for (int m = n_users - 1; m >= 0; --m) {
      if (m == n) continue;
      index = index * n_channels + alloc[m];
    }
    return index;
  };
  // utility[n][i][k]: u_n(k, a_{i,-n}).
  std::vector<std::vector<std::vector<double>>> utility(n_users);
  for (int n = 0; n < n_users; ++n) {
    utility[n].resize(rival_profiles);
    Allocation alloc(n_users, 0);
    for (std::uint64_t i = 0; i < rival_profiles; ++i) {
      std::uint64_t rest = i;
      for (int m = 0; m < n_users; ++m) {
        if (m == n) continue;
        alloc[m] = static_cast<ChannelIndex>(rest % n_channels);
        rest /= n_channels;
      }
      alloc[n] = 0;
      utility[n][i] = game.UtilityVector(alloc, n);
    }
  }

  const FpState init = MfpInit(game, seed);
  std::vector<std::vector<std::uint64_t>> counts(
      n_users, std::vector<std::uint64_t>(rival_profiles, 0));
  Allocation previous = init.last_alloc;
  Trajectory trajectory;
  trajectory.records.reserve(t_max);
  for (int t = 1; t <= t_max; ++t) {
    Allocation alloc(n_users);
    const int history = t - 1;
    for (int n = 0; n < n_users; ++n) {
      const auto strategies = game.Strategies(n);
      std::vector<double> expected(strategies.size(), 0.0);
      if (history > 0) {
        for (std::uint64_t i = 0; i < rival_profiles; ++i) {
          if (counts[n][i] == 0) continue;
          const double p = static_cast<double>(counts[n][i]) / history;
          for (std::size_t s = 0; s < strategies.size(); ++s) {
            expected[s] += p * utility[n][i][strategies[s]];
          }
        }
      }
      alloc[n] = ArgmaxWithIncumbent(strategies, expected, previous[n]);
    }
    for (int n = 0; n < n_users; ++n) ++counts[n][rival_index(alloc, n)];
    trajectory.records.push_back(MakeRecord(game, t, alloc, 0));
    previous = std::move(alloc);
  }
  Summarize(trajectory);
  return trajectory;
}

void WriteTrajectoryJsonl(const Trajectory& trajectory, std::ostream& out) {
  for (const auto& record : trajectory.records) {
    nlohmann::ordered_json line;
    line["t"] = record.t;
    line["alloc"] = record.alloc;
    line["sum_rate"] = record.sum_rate;
    line["min_rate"] = record.min_rate;
    line["n_sharing"] = record.n_sharing;
    line["is_pne"] = record.is_pne;
    line["resets"] = record.resets;
    out << line.dump() << '\n';
  }
}

}  // namespace fsig
