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

#include "fsig/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "fsig/assignment.h"
#include "fsig/error.h"
#include "fsig/rng.h"

namespace fsig {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kConvergence, "convergence"},
    {ExperimentKind::kRatesVsN, "rates_vs_n"},
    {ExperimentKind::kSnrSweep, "snr_sweep"},
    {ExperimentKind::kLemma1Check, "lemma1_check"},
    {ExperimentKind::kMatchingCheck, "matching_check"},
    {ExperimentKind::kPpoaSmall, "ppoa_small"},
    {ExperimentKind::kFpEquivalence, "fp_equivalence"},
};

// Largest factor applied while searching for a strong-interference scaling.
constexpr double kMaxCrossGainScale = 1e15;

}  // namespace

std::string_view ExperimentKindName(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(std::string_view name) {
  for (const auto& [kind, k_name] : kKindNames) {
    if (k_name == name) return kind;
  }
  std::string known;
  for (const auto& [kind, k_name] : kKindNames) {
    if (!known.empty()) known += '|';
    known += k_name;
  }
  Fail(ErrorCode::kInvalidConfig,
       "unknown experiment '" + std::string(name) + "' (" + known + ")");
}

int MRule::Resolve(int n_users, int n_channels) const {
  int m = kind == Kind::kFixed
              ? static_cast<int>(value)
              : static_cast<int>(std::ceil(value * std::log(n_users)));
  return std::clamp(m, 1, n_channels);
}

void ExperimentSpec::Validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) Fail(ErrorCode::kInvalidConfig, message);
  };
  require(realizations >= 1, "realizations must be >= 1");
  require(!n_values.empty() && !snr_db.empty() && !alpha.empty() &&
              !tau.empty() && !t_max.empty(),
          "every grid axis needs at least one value");
  for (int n : n_values) require(n >= 1, "n must be >= 1");
  if (n_channels) require(*n_channels >= 1, "k must be >= 1");
  if (m_rule.kind == MRule::Kind::kFixed) {
    require(m_rule.value >= 1, "fixed M must be >= 1");
  } else {
    require(m_rule.value > 0, "M rule factor c must be positive");
  }
  for (const StepSize& a : alpha) {
    require(a.kind == StepSize::Kind::kHarmonic ||
                (a.value > 0.0 && a.value <= 1.0),
            "alpha must lie in (0, 1] or be harmonic");
  }
  for (int t : tau) require(t >= 0, "tau must be >= 0");
  for (int t : t_max) require(t >= 1, "t_max must be >= 1");
  require(noise > 0.0, "noise must be positive");
  require(cross_gain_scale > 0.0, "cross_gain_scale must be positive");
  if (weight_range) {
    require(weight_range->first > 0.0 &&
                weight_range->first <= weight_range->second,
            "weights need 0 < w_min <= w_max");
  }
}

std::vector<GridPoint> ExpandGrid(const ExperimentSpec& spec) {
  std::vector<GridPoint> points;
  for (int n : spec.n_values) {
    const int k = spec.n_channels.value_or(n);
    for (double snr : spec.snr_db) {
      for (const StepSize& alpha : spec.alpha) {
        for (int tau : spec.tau) {
          for (int t_max : spec.t_max) {
            points.push_back(
                {n, k, spec.m_rule.Resolve(n, k), snr, alpha, tau, t_max});
          }
        }
      }
    }
  }
  return points;
}

std::uint64_t RealizationSeed(std::uint64_t base_seed, int index) {
  return DeriveSeed(base_seed, static_cast<std::uint64_t>(index));
}

OptimalityRatios RatioToOptimal(const ChannelRealization& realization,
                                const PowerProfile& powers,
                                std::span<const ChannelIndex> alloc) {
  const double w = WeightedSumRate(realization, powers, alloc);
  const double optimum =
      OptimalPermutation(InterferenceFreeRateMatrix(realization, powers)).value;
  double best_channels = 0.0;
  for (int n = 0; n < realization.n_users(); ++n) {
    double best = 0.0;
    for (int k = 0; k < realization.n_channels(); ++k) {
      best = std::max(best, realization.OwnGain(n, k));
    }
    best_channels += powers.weights[n] *
                     std::log2(1.0 + powers.power[n] * best / powers.noise);
  }
  return {w / optimum, w / best_channels};
}

Allocation RandomPermutation(int n_users, int n_channels, std::uint64_t seed) {
  if (n_users > n_channels) {
    Fail(ErrorCode::kInvalidConfig, "random permutation needs N <= K");
  }
  Rng rng(seed, Stream::kRandomPermutation);
  std::vector<ChannelIndex> channels(n_channels);
  std::iota(channels.begin(), channels.end(), 0);
  for (int i = n_channels - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.UniformInt(i + 1));
    std::swap(channels[i], channels[j]);
  }
  channels.resize(n_users);
  return channels;
}

namespace {

struct Instance {
  std::shared_ptr<const ChannelRealization> realization;
  PowerProfile powers;
};

Instance MakeInstance(const ExperimentSpec& spec, const GridPoint& point,
                      std::uint64_t seed, double cross_scale) {
  auto base = ChannelRealization::Generate(point.n, point.k, seed);
  Instance instance;
  instance.realization = std::make_shared<const ChannelRealization>(
      cross_scale == 1.0 ? std::move(base)
                         : base.WithCrossGainsScaled(cross_scale));
  instance.powers = PowerProfile::Uniform(
      point.n, SnrToPower(point.snr_db, spec.noise), spec.noise);
  if (spec.weight_range) {
    instance.powers.RandomizeWeights(spec.weight_range->first,
                                     spec.weight_range->second, seed);
  }
  return instance;
}

void FpPipeline(const ExperimentSpec& spec, const GridPoint& point,
                std::uint64_t seed, std::vector<Metric>& out) {
  const Instance inst = MakeInstance(spec, point, seed, spec.cross_gain_scale);
  const Game game(inst.realization, inst.powers, spec.game, point.m);
  DynamicsConfig config;
  config.alpha = point.alpha;
  config.tau = point.tau;
  config.t_max = point.t_max;
  config.reset_schedule = spec.reset_schedule;
  config.stop_at_pne = true;
  const Trajectory trajectory = RunDynamics(game, config, seed);
  const Allocation& alloc = trajectory.final_alloc();

  const ChannelRealization& realization = *inst.realization;
  const PowerProfile& powers = inst.powers;
  const AssignmentResult optimum =
      OptimalPermutation(InterferenceFreeRateMatrix(realization, powers));
  const Allocation random = RandomPermutation(point.n, point.k, seed);
  const double n = point.n;

  const double sum_rate = WeightedSumRate(realization, powers, alloc);
  const double min_rate = MinRate(realization, powers, alloc);
  const double opt_min = MinRate(realization, powers, optimum.assignment);
  const double rand_sum = WeightedSumRate(realization, powers, random);
  const OptimalityRatios ratios = RatioToOptimal(realization, powers, alloc);

  out.push_back({"converged", trajectory.converged_t ? 1.0 : 0.0});
  if (trajectory.converged_t) {
    out.push_back({"convergence_t", static_cast<double>(*trajectory.converged_t)});
  }
  out.push_back({"resets", static_cast<double>(trajectory.resets)});
  out.push_back({"n_sharing", static_cast<double>(CountSharingUsers(alloc))});
  out.push_back({"sum_rate", sum_rate});
  out.push_back({"mean_rate", sum_rate / n});
  out.push_back({"min_rate", min_rate});
  out.push_back({"ratio_sum_rate", ratios.to_hungarian});
  out.push_back({"ratio_best_channel", ratios.to_best_channel});
  out.push_back({"ratio_min_rate", min_rate / opt_min});
  out.push_back({"opt_sum_rate", optimum.value});
  out.push_back({"opt_mean_rate", optimum.value / n});
  out.push_back({"opt_min_rate", opt_min});
  out.push_back({"rand_sum_rate", rand_sum});
  out.push_back({"rand_mean_rate", rand_sum / n});
  out.push_back({"rand_min_rate", MinRate(realization, powers, random)});
}

bool IsPermutation(const Allocation& alloc) {
  std::set<ChannelIndex> seen(alloc.begin(), alloc.end());
  return seen.size() == alloc.size();
}

void Lemma1Pipeline(const ExperimentSpec& spec, const GridPoint& point,
                    std::uint64_t seed, std::vector<Metric>& out) {
  if (point.n != point.k) {
    Fail(ErrorCode::kInvalidConfig, "lemma1_check needs N = K");
  }
  double scale = spec.cross_gain_scale;
  Instance inst = MakeInstance(spec, point, seed, scale);
  while (!StrongInterferenceHolds(*inst.realization, inst.powers) &&
         scale < kMaxCrossGainScale) {
    scale *= 10.0;
    inst = MakeInstance(spec, point, seed, scale);
  }
  const bool strong = StrongInterferenceHolds(*inst.realization, inst.powers);
  const Game game = Game::Naive(inst.realization, inst.powers);
  const auto equilibria = EnumeratePne(game, spec.enumeration_budget);
  const double factorial = std::tgamma(point.n + 1.0);
  const bool all_permutations =
      static_cast<double>(equilibria.size()) == factorial &&
      std::all_of(equilibria.begin(), equilibria.end(), IsPermutation);
  out.push_back({"cross_gain_scale", scale});
  out.push_back({"strong_interference", strong ? 1.0 : 0.0});
  out.push_back({"n_pne", static_cast<double>(equilibria.size())});
  out.push_back({"pne_are_permutations", all_permutations ? 1.0 : 0.0});
}

void MatchingPipeline(const ExperimentSpec& spec, const GridPoint& point,
                      std::uint64_t seed, std::vector<Metric>& out) {
  const Instance inst = MakeInstance(spec, point, seed, 1.0);
  const OrderedChannels ordered(*inst.realization);
  const PreferenceGraph graph = PreferenceGraph::FromBestSets(ordered, point.m);
  const Matching matching = MaximumMatching(graph);
  const bool perfect = matching.size == std::min(point.n, point.k);
  out.push_back({"matching_size", static_cast<double>(matching.size)});
  out.push_back({"perfect_matching", perfect ? 1.0 : 0.0});
  if (point.n == point.k && point.n <= kMaxPermanentSize) {
    const auto count = static_cast<double>(CountPerfectMatchings(graph));
    out.push_back({"perfect_matchings", count});
    if (perfect) {
      out.push_back(
          {"count_bound_holds", count >= std::tgamma(point.m + 1.0) ? 1.0 : 0.0});
    }
  }
}

void PpoaPipeline(const ExperimentSpec& spec, const GridPoint& point,
                  std::uint64_t seed, std::vector<Metric>& out) {
  const Instance inst = MakeInstance(spec, point, seed, spec.cross_gain_scale);
  const Game naive = Game::Naive(inst.realization, inst.powers);
  const Game mfsig = Game::Mfsig(inst.realization, inst.powers, point.m);
  for (const auto* game : {&naive, &mfsig}) {
    const std::string tag(GameKindName(game->kind()));
    try {
      const PpoaResult result =
          ComputePpoa(*game, SearchSpace::kAllProfiles, spec.enumeration_budget);
      out.push_back({"ppoa_" + tag, result.ppoa});
      out.push_back({"n_pne_" + tag, static_cast<double>(result.n_pne)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyEquilibriumSet) throw;
      out.push_back({"n_pne_" + tag, 0.0});
    }
  }
}

void FpEquivalencePipeline(const ExperimentSpec& spec, const GridPoint& point,
                           std::uint64_t seed, std::vector<Metric>& out) {
  const Instance inst = MakeInstance(spec, point, seed, spec.cross_gain_scale);
  const Game game(inst.realization, inst.powers, spec.game, point.m);
  DynamicsConfig config;
  config.alpha = StepSize::Harmonic();
  config.tau = 0;
  config.t_max = point.t_max;
  const Trajectory modified = RunDynamics(game, config, seed);
  const Trajectory reference =
      RunJointFpReference(game, point.t_max, seed, spec.enumeration_budget);
  int mismatches = 0;
  for (std::size_t i = 0; i < modified.records.size(); ++i) {
    if (modified.records[i].alloc != reference.records[i].alloc) ++mismatches;
  }
  out.push_back({"traces_identical", mismatches == 0 ? 1.0 : 0.0});
  out.push_back({"mismatched_rounds", static_cast<double>(mismatches)});
}

}  // namespace

RealizationRow RunRealization(const ExperimentSpec& spec,
                              const GridPoint& point, int index) {
  RealizationRow row;
  row.index = index;
  row.seed = RealizationSeed(spec.base_seed, index);
  try {
    switch (spec.kind) {
      case ExperimentKind::kConvergence:
      case ExperimentKind::kRatesVsN:
      case ExperimentKind::kSnrSweep:
        FpPipeline(spec, point, row.seed, row.metrics);
        break;
      case ExperimentKind::kLemma1Check:
        Lemma1Pipeline(spec, point, row.seed, row.metrics);
        break;
      case ExperimentKind::kMatchingCheck:
        MatchingPipeline(spec, point, row.seed, row.metrics);
        break;
      case ExperimentKind::kPpoaSmall:
        PpoaPipeline(spec, point, row.seed, row.metrics);
        break;
      case ExperimentKind::kFpEquivalence:
        FpEquivalencePipeline(spec, point, row.seed, row.metrics);
        break;
    }
  } catch (const Error& e) {
    row.metrics.clear();
    row.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  return row;
}

std::vector<Aggregate> AggregateRows(const std::vector<RealizationRow>& rows) {
  std::vector<std::string> order;
  for (const auto& row : rows) {
    for (const auto& metric : row.metrics) {
      if (std::find(order.begin(), order.end(), metric.name) == order.end()) {
        order.push_back(metric.name);
      }
    }
  }
  std::vector<Aggregate> aggregates;
  for (const std::string& name : order) {
    std::vector<double> values;
    for (const auto& row : rows) {
      for (const auto& metric : row.metrics) {
        if (metric.name == name) values.push_back(metric.value);
      }
    }
    Aggregate agg;
    agg.metric = name;
    agg.count = static_cast<int>(values.size());
    for (double v : values) agg.mean += v;
    agg.mean /= agg.count;
    if (agg.count > 1) {
      double squares = 0.0;
      for (double v : values) squares += (v - agg.mean) * (v - agg.mean);
      agg.std = std::sqrt(squares / (agg.count - 1));
    }
    aggregates.push_back(std::move(agg));
  }
  const auto failures = std::count_if(
      rows.begin(), rows.end(), [](const auto& row) { return !row.error.empty(); });
  if (failures > 0) {
    aggregates.push_back({"infeasible_count", static_cast<double>(failures), 0.0,
                          static_cast<int>(failures)});
  }
  return aggregates;
}

GridResult RunGridPoint(const ExperimentSpec& spec, const GridPoint& point) {
  GridResult result;
  result.point = point;
  result.rows.resize(spec.realizations);
  const int threads = std::max(
      1, std::min(spec.realizations,
                  spec.threads > 0
                      ? spec.threads
                      : static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < spec.realizations; i = next++) {
      result.rows[i] = RunRealization(spec, point, i);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  result.aggregates = AggregateRows(result.rows);
  return result;
}

ResultSet RunExperiment(const ExperimentSpec& spec) {
  spec.Validate();
  ResultSet results;
  results.kind = spec.kind;
  results.realizations = spec.realizations;
  for (const GridPoint& point : ExpandGrid(spec)) {
    results.grid.push_back(RunGridPoint(spec, point));
  }
  return results;
}

}  // namespace fsig
