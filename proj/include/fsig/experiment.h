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

#ifndef FSIG_EXPERIMENT_H_
#define FSIG_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsig/channel_model.h"
#include "fsig/dynamics.h"
#include "fsig/equilibrium.h"
#include "fsig/game.h"

namespace fsig {

enum class ExperimentKind {
  kConvergence,
  kRatesVsN,
  kSnrSweep,
  kLemma1Check,
  kMatchingCheck,
  kPpoaSmall,
  kFpEquivalence,
};

std::string_view ExperimentKindName(ExperimentKind kind);
ExperimentKind ParseExperimentKind(std::string_view name);

// How M follows the number of users: a fixed value, or ceil(c * ln N).
struct MRule {
  enum class Kind { kFixed, kCeilCLnN };
  Kind kind = Kind::kFixed;
  double value = 9;

  static MRule Fixed(int m) { return {Kind::kFixed, static_cast<double>(m)}; }
  static MRule CeilCLnN(double c) { return {Kind::kCeilCLnN, c}; }

  // Clamped to [1, n_channels].
  int Resolve(int n_users, int n_channels) const;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kConvergence;
  std::vector<int> n_values{100};
  std::optional<int> n_channels;  // K; defaults to N at every grid point
  MRule m_rule = MRule::Fixed(9);
  std::vector<double> snr_db{20.0};
  std::vector<StepSize> alpha{StepSize::Constant(0.5)};
  std::vector<int> tau{60};
  std::vector<int> t_max{300};
  ResetSchedule reset_schedule = ResetSchedule::kRecurring;
  int realizations = 1;
  std::uint64_t base_seed = 1;
  GameKind game = GameKind::kMfsig;
  double noise = 1.0;
  std::optional<std::pair<double, double>> weight_range;
  double cross_gain_scale = 1.0;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  int threads = 0;  // 0: hardware concurrency

  void Validate() const;
};

struct GridPoint {
  int n = 0;
  int k = 0;
  int m = 0;
  double snr_db = 0.0;
  StepSize alpha;
  int tau = 0;
  int t_max = 0;
};

struct Metric {
  std::string name;
  double value;
};

struct RealizationRow {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<Metric> metrics;
  std::string error;  // empty on success
};

struct Aggregate {
  std::string metric;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 with one value
  int count = 0;
};

struct GridResult {
  GridPoint point;
  std::vector<RealizationRow> rows;
  std::vector<Aggregate> aggregates;
};

struct ResultSet {
  ExperimentKind kind = ExperimentKind::kConvergence;
  int realizations = 0;
  std::vector<GridResult> grid;
};

// Cartesian product N x SNR x alpha x tau x t_max, in that nesting order.
std::vector<GridPoint> ExpandGrid(const ExperimentSpec& spec);

// Seed of realization i; depends only on the base seed and i.
std::uint64_t RealizationSeed(std::uint64_t base_seed, int index);

// Runs realization `index` at one grid point. Library errors raised by the
// pipeline are recorded in the row instead of propagating.
RealizationRow RunRealization(const ExperimentSpec& spec,
                              const GridPoint& point, int index);

GridResult RunGridPoint(const ExperimentSpec& spec, const GridPoint& point);

ResultSet RunExperiment(const ExperimentSpec& spec);

// Mean and sample standard deviation of each metric over the rows that
// report it, in first-appearance order. Errored rows add an
// "infeasible_count" aggregate whose mean is the number of failures.
std::vector<Aggregate> AggregateRows(const std::vector<RealizationRow>& rows);

struct OptimalityRatios {
  double to_hungarian;     // W(a) / interference-free optimal permutation
  double to_best_channel;  // W(a) / sum_n w_n log2(1 + P_n |h_{n,(K)}|^2 / N0)
};

OptimalityRatios RatioToOptimal(const ChannelRealization& realization,
                                const PowerProfile& powers,
                                std::span<const ChannelIndex> alloc);

// Uniform injective assignment of users to channels (requires N <= K).
Allocation RandomPermutation(int n_users, int n_channels, std::uint64_t seed);

}  // namespace fsig

#endif  // FSIG_EXPERIMENT_H_
