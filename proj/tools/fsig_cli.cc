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

// fsig: Monte Carlo sweeps and single trajectories for the channel-allocation
// games.
//
//   fsig run --experiment snr_sweep --n 200 --m-log-factor 3 \
//       --snr-db=-10,25 --realizations 50 --out results/fig3
//   fsig trajectory --n 100 --m 9 --seed 3 --out traj.jsonl

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsig/dynamics.h"
#include "fsig/error.h"
#include "fsig/experiment.h"
#include "fsig/results_io.h"
#include "json.hpp"

namespace {

using fsig::ErrorCode;

struct Overrides {
  std::string config_path;
  std::string experiment;
  std::vector<int> n;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<double> m_log_factor;
  std::vector<double> snr_db;
  std::vector<std::string> alpha;
  std::vector<int> tau;
  std::vector<int> t_max;
  std::string reset_schedule;
  std::optional<int> realizations;
  std::optional<std::uint64_t> seed;
  std::string game;
  std::optional<double> cross_gain_scale;
  std::optional<std::uint64_t> budget;
  std::optional<int> threads;
  std::optional<double> w_min;
  std::optional<double> w_max;
  std::string out;
};

void AddSpecOptions(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON experiment manifest");
  app.add_option("--n", o.n, "Number of users (list)")->delimiter(',');
  app.add_option("--k", o.k, "Number of channels (default: N)");
  app.add_option("--m", o.m, "Fixed M for the M-FSIG");
  app.add_option("--m-log-factor", o.m_log_factor, "Use M = ceil(c ln N)");
  app.add_option("--snr-db", o.snr_db, "Mean link SNR in dB (list)")
      ->delimiter(',');
  app.add_option("--alpha", o.alpha, "Step size in (0,1] or 'harmonic' (list)")
      ->delimiter(',');
  app.add_option("--tau", o.tau, "Reset check period, 0 disables (list)")
      ->delimiter(',');
  app.add_option("--t-max", o.t_max, "Iteration cap (list)")->delimiter(',');
  app.add_option("--reset-schedule", o.reset_schedule, "recurring|one_shot");
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--game", o.game, "naive|mfsig");
  app.add_option("--cross-gain-scale", o.cross_gain_scale,
                 "Multiply every cross gain");
  app.add_option("--budget", o.budget, "Exhaustive enumeration budget");
  app.add_option("--w-min", o.w_min, "Random weights lower bound");
  app.add_option("--w-max", o.w_max, "Random weights upper bound");
}

fsig::ExperimentSpec BuildSpec(const Overrides& o) {
  fsig::ExperimentSpec spec;
  if (!o.config_path.empty()) {
    std::ifstream file(o.config_path);
    if (!file) {
      fsig::Fail(ErrorCode::kIo, "cannot read config '" + o.config_path + "'");
    }
    nlohmann::json config;
    try {
      config = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception& e) {
      fsig::Fail(ErrorCode::kInvalidConfig,
                 "cannot parse '" + o.config_path + "': " + e.what());
    }
    spec = fsig::ParseExperimentSpec(config);
  }
  if (!o.experiment.empty()) spec.kind = fsig::ParseExperimentKind(o.experiment);
  if (!o.n.empty()) spec.n_values = o.n;
  if (o.k) spec.n_channels = *o.k;
  if (o.m) spec.m_rule = fsig::MRule::Fixed(*o.m);
  if (o.m_log_factor) spec.m_rule = fsig::MRule::CeilCLnN(*o.m_log_factor);
  if (!o.snr_db.empty()) spec.snr_db = o.snr_db;
  if (!o.alpha.empty()) {
    spec.alpha.clear();
    for (const auto& a : o.alpha) {
      spec.alpha.push_back(fsig::ParseStepSize(nlohmann::json(a)));
    }
  }
  if (!o.tau.empty()) spec.tau = o.tau;
  if (!o.t_max.empty()) spec.t_max = o.t_max;
  if (!o.reset_schedule.empty()) {
    spec.reset_schedule = fsig::ParseResetSchedule(o.reset_schedule);
  }
  if (o.realizations) spec.realizations = *o.realizations;
  if (o.seed) spec.base_seed = *o.seed;
  if (!o.game.empty()) spec.game = fsig::ParseGameKind(o.game);
  if (o.cross_gain_scale) spec.cross_gain_scale = *o.cross_gain_scale;
  if (o.budget) spec.enumeration_budget = *o.budget;
  if (o.threads) spec.threads = *o.threads;
  if (o.w_min || o.w_max) {
    if (!o.w_min || !o.w_max) {
      fsig::Fail(ErrorCode::kInvalidConfig, "--w-min and --w-max go together");
    }
    spec.weight_range = {*o.w_min, *o.w_max};
  }
  spec.Validate();
  return spec;
}

int RunCommand(const Overrides& o) {
  const fsig::ExperimentSpec spec = BuildSpec(o);
  const std::string out_dir = o.out.empty() ? "results" : o.out;
  const fsig::ResultSet results = fsig::RunExperiment(spec);
  fsig::EmitResults(results, out_dir);
  fsig::WriteTextFile(std::filesystem::path(out_dir) / "spec.json",
                      fsig::ExperimentSpecToJson(spec).dump(2) + "\n");
  std::cout << "wrote " << out_dir << "/results.csv and " << out_dir
            << "/realizations.jsonl\n";
  return 0;
}

int TrajectoryCommand(const Overrides& o) {
  fsig::ExperimentSpec spec = BuildSpec(o);
  const std::vector<fsig::GridPoint> grid = fsig::ExpandGrid(spec);
  if (grid.size() != 1) {
    fsig::Fail(ErrorCode::kInvalidConfig,
               "trajectory takes exactly one value per grid axis");
  }
  const fsig::GridPoint& p = grid.front();
  auto realization = std::make_shared<const fsig::ChannelRealization>(
      fsig::ChannelRealization::Generate(p.n, p.k, spec.base_seed)
          .WithCrossGainsScaled(spec.cross_gain_scale));
  fsig::PowerProfile powers = fsig::PowerProfile::Uniform(
      p.n, fsig::SnrToPower(p.snr_db, spec.noise), spec.noise);
  if (spec.weight_range) {
    powers.RandomizeWeights(spec.weight_range->first, spec.weight_range->second,
                            spec.base_seed);
  }
  const fsig::Game game(realization, powers, spec.game, p.m);
  fsig::DynamicsConfig config;
  config.alpha = p.alpha;
  config.tau = p.tau;
  config.t_max = p.t_max;
  config.reset_schedule = spec.reset_schedule;
  const fsig::Trajectory trajectory =
      fsig::RunDynamics(game, config, spec.base_seed);

  std::ostringstream text;
  fsig::WriteTrajectoryJsonl(trajectory, text);
  if (o.out.empty() || o.out == "-") {
    std::cout << text.str();
  } else {
    fsig::WriteTextFile(o.out, text.str());
  }
  std::cerr << fsig::TerminalStatusName(trajectory.status) << " resets="
            << trajectory.resets;
  if (trajectory.converged_t) std::cerr << " converged_t=" << *trajectory.converged_t;
  std::cerr << '\n';
  return 0;
}

void PrintError(std::string_view code, std::string_view message) {
  nlohmann::ordered_json error;
  error["error"] = code;
  error["message"] = message;
  std::cerr << error.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-allocation game simulator"};
  app.require_subcommand(1);

  Overrides run_opts;
  CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  AddSpecOptions(*run, run_opts);
  run->add_option("--experiment", run_opts.experiment,
                  "convergence|rates_vs_n|snr_sweep|lemma1_check|"
                  "matching_check|ppoa_small|fp_equivalence");
  run->add_option("--realizations", run_opts.realizations,
                  "Realizations per grid point");
  run->add_option("--threads", run_opts.threads, "Worker threads (0: auto)");
  run->add_option("--out", run_opts.out, "Output directory");

  Overrides traj_opts;
  CLI::App* traj = app.add_subcommand(
      "trajectory", "Run one Modified FP trajectory and print JSONL records");
  AddSpecOptions(*traj, traj_opts);
  traj->add_option("--out", traj_opts.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("usage", e.what());
    return 2;
  }

  try {
    if (run->parsed()) return RunCommand(run_opts);
    return TrajectoryCommand(traj_opts);
  } catch (const fsig::Error& e) {
    PrintError(fsig::ErrorCodeName(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError("internal", e.what());
    return 1;
  }
}
