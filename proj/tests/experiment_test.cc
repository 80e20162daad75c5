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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fsig/assignment.h"
#include "fsig/equilibrium.h"
#include "fsig/error.h"
#include "fsig/experiment.h"
#include "fsig/results_io.h"
#include "json.hpp"

namespace fsig {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fsig_experiment_test_" + name);
  fs::remove_all(dir);
  return dir;
}

const Aggregate* Find(const GridResult& grid, const std::string& metric) {
  for (const auto& agg : grid.aggregates) {
    if (agg.metric == metric) return &agg;
  }
  return nullptr;
}

ExperimentSpec SmallConvergence() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kConvergence;
  spec.n_values = {20};
  spec.m_rule = MRule::Fixed(5);
  spec.t_max = {150};
  spec.tau = {30};
  spec.realizations = 4;
  spec.base_seed = 11;
  spec.threads = 2;
  return spec;
}

TEST_CASE("ratio to optimal") {
  const auto r = ChannelRealization::Generate(8, 8, 3);
  const PowerProfile p = PowerProfile::Uniform(8, 100.0);
  const auto best = OptimalPermutation(InterferenceFreeRateMatrix(r, p));
  CHECK(RatioToOptimal(r, p, best.assignment).to_hungarian == 1.0);

  const Allocation crowded(8, 0);
  CHECK(RatioToOptimal(r, p, crowded).to_hungarian < 1.0);

  const auto big = ChannelRealization::Generate(100, 100, 4);
  const PowerProfile q = PowerProfile::Uniform(100, 100.0);
  const auto opt = OptimalPermutation(InterferenceFreeRateMatrix(big, q));
  const double to_best = RatioToOptimal(big, q, opt.assignment).to_best_channel;
  CHECK(to_best > 0.9);
  CHECK(to_best <= 1.0);
}

TEST_CASE("random permutation is a deterministic permutation") {
  const Allocation a = RandomPermutation(10, 10, 5);
  CHECK(a == RandomPermutation(10, 10, 5));
  CHECK(a != RandomPermutation(10, 10, 6));
  Allocation sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i);
  const Allocation partial = RandomPermutation(4, 9, 5);
  std::set<int> distinct(partial.begin(), partial.end());
  CHECK(distinct.size() == 4);
  CHECK_THROWS_AS(RandomPermutation(5, 4, 1), Error);
}

TEST_CASE("M rules") {
  CHECK(MRule::CeilCLnN(3.0).Resolve(200, 200) == 16);
  CHECK(MRule::CeilCLnN(2.0).Resolve(30, 30) == 7);
  CHECK(MRule::CeilCLnN(2.0).Resolve(2, 2) == 2);
  CHECK(MRule::Fixed(9).Resolve(5, 5) == 5);
  CHECK(MRule::Fixed(9).Resolve(100, 100) == 9);
}

TEST_CASE("grid expansion nests N, SNR, alpha, tau, t_max") {
  ExperimentSpec spec;
  spec.n_values = {10, 20};
  spec.snr_db = {0.0, 10.0};
  spec.tau = {0, 30};
  const auto grid = ExpandGrid(spec);
  REQUIRE(grid.size() == 8);
  CHECK(grid[0].n == 10);
  CHECK(grid[0].snr_db == 0.0);
  CHECK(grid[0].tau == 0);
  CHECK(grid[1].tau == 30);
  CHECK(grid[2].snr_db == 10.0);
  CHECK(grid[4].n == 20);
  CHECK(grid[4].k == 20);
  CHECK(grid[4].m == 9);
}

TEST_CASE("emitting an empty result set writes headers only") {
  ResultSet empty;
  empty.realizations = 0;
  const fs::path dir = TempDir("empty");
  EmitResults(empty, dir);
  CHECK(ReadFile(dir / "results.csv") == std::string(kCsvHeader) + "\n");
  CHECK(ReadFile(dir / "realizations.jsonl").empty());
  fs::remove_all(dir);
}

TEST_CASE("emitting one grid point with three metrics") {
  ResultSet results;
  results.kind = ExperimentKind::kSnrSweep;
  results.realizations = 2;
  GridResult grid;
  grid.point = {4, 4, 2, 10.0, StepSize::Constant(0.5), 60, 300};
  for (int i = 0; i < 2; ++i) {
    RealizationRow row;
    row.index = i;
    row.seed = RealizationSeed(1, i);
    row.metrics = {{"a", 1.0 + i}, {"b", 2.0}, {"c", 0.25 * i}};
    grid.rows.push_back(row);
  }
  grid.aggregates = AggregateRows(grid.rows);
  results.grid.push_back(grid);

  const fs::path dir = TempDir("three");
  EmitResults(results, dir);
  const auto csv = Lines(ReadFile(dir / "results.csv"));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0] == kCsvHeader);
  CHECK(csv[1] == "snr_sweep,4,4,2,10,0.5,60,300,2,a,1.5,0.7071067811865476");
  CHECK(csv[2] == "snr_sweep,4,4,2,10,0.5,60,300,2,b,2,0");
  CHECK(csv[3].starts_with("snr_sweep,4,4,2,10,0.5,60,300,2,c,0.125,"));
  const std::string first = ReadFile(dir / "results.csv");
  EmitResults(results, dir);
  CHECK(ReadFile(dir / "results.csv") == first);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output path reports an I/O error with the path") {
  const fs::path dir = TempDir("blocked");
  fs::create_directories(dir.parent_path());
  { std::ofstream(dir) << "file, not a directory"; }
  try {
    EmitResults(ResultSet{}, dir / "sub");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
    CHECK(std::string(e.what()).find(dir.string()) != std::string::npos);
  }
  fs::remove(dir);
}

TEST_CASE("experiments are deterministic and thread-count independent") {
  ExperimentSpec spec = SmallConvergence();
  const ResultSet a = RunExperiment(spec);
  const ResultSet b = RunExperiment(spec);
  spec.threads = 1;
  const ResultSet c = RunExperiment(spec);
  CHECK(ResultsCsv(a) == ResultsCsv(b));
  CHECK(ResultsJsonl(a) == ResultsJsonl(b));
  CHECK(ResultsCsv(a) == ResultsCsv(c));
  CHECK(ResultsJsonl(a) == ResultsJsonl(c));
}

TEST_CASE("per-realization rows reproduce the CSV aggregates") {
  ExperimentSpec spec = SmallConvergence();
  spec.snr_db = {0.0, 20.0};
  const ResultSet results = RunExperiment(spec);
  std::map<std::pair<double, std::string>, std::vector<double>> values;
  for (const auto& line : Lines(ResultsJsonl(results))) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["schema_version"] == kResultsSchemaVersion);
    for (const auto& [name, value] : j["metrics"].items()) {
      values[{j["snr_db"].get<double>(), name}].push_back(value.get<double>());
    }
  }
  int checked = 0;
  for (const auto& line : Lines(ResultsCsv(results))) {
    if (line == kCsvHeader) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    const auto& v = values.at({std::stod(cells[4]), cells[9]});
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
    CHECK(std::abs(std::stod(cells[10]) - mean) <= 1e-9 * std::max(1.0, std::abs(mean)));
    CHECK(std::abs(std::stod(cells[11]) - sd) <= 1e-9 * std::max(1.0, sd));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("grid order does not change per-point results") {
  ExperimentSpec forward = SmallConvergence();
  forward.snr_db = {0.0, 20.0};
  ExperimentSpec backward = forward;
  backward.snr_db = {20.0, 0.0};
  const ResultSet a = RunExperiment(forward);
  const ResultSet b = RunExperiment(backward);
  REQUIRE(a.grid.size() == 2);
  REQUIRE(b.grid.size() == 2);
  for (int i = 0; i < 2; ++i) {
    const auto& x = a.grid[i];
    const auto& y = b.grid[1 - i];
    CHECK(x.point.snr_db == y.point.snr_db);
    REQUIRE(x.rows.size() == y.rows.size());
    for (std::size_t r = 0; r < x.rows.size(); ++r) {
      REQUIRE(x.rows[r].metrics.size() == y.rows[r].metrics.size());
      for (std::size_t m = 0; m < x.rows[r].metrics.size(); ++m) {
        CHECK(x.rows[r].metrics[m].value == y.rows[r].metrics[m].value);
      }
    }
  }
}

TEST_CASE("adding realizations leaves earlier ones unchanged") {
  ExperimentSpec spec = SmallConvergence();
  spec.realizations = 2;
  const ResultSet two = RunExperiment(spec);
  spec.realizations = 4;
  const ResultSet four = RunExperiment(spec);
  for (int i = 0; i < 2; ++i) {
    const auto& x = two.grid[0].rows[i];
    const auto& y = four.grid[0].rows[i];
    CHECK(x.seed == y.seed);
    REQUIRE(x.metrics.size() == y.metrics.size());
    for (std::size_t m = 0; m < x.metrics.size(); ++m) {
      CHECK(x.metrics[m].name == y.metrics[m].name);
      CHECK(x.metrics[m].value == y.metrics[m].value);
    }
  }
}

TEST_CASE("infeasible grid points are reported without aborting the run") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kPpoaSmall;
  spec.n_values = {3, 6};
  spec.m_rule = MRule::Fixed(2);
  spec.realizations = 3;
  spec.enumeration_budget = 1000;
  spec.threads = 1;
  const ResultSet results = RunExperiment(spec);
  REQUIRE(results.grid.size() == 2);
  for (const auto& row : results.grid[0].rows) CHECK(row.error.empty());
  for (const auto& row : results.grid[1].rows) {
    CHECK(row.error.find("budget") != std::string::npos);
  }
  const Aggregate* infeasible = Find(results.grid[1], "infeasible_count");
  REQUIRE(infeasible != nullptr);
  CHECK(infeasible->mean == 3.0);
  CHECK(Find(results.grid[0], "infeasible_count") == nullptr);
  for (const auto& line : Lines(ResultsJsonl(results))) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("error") == (j["n"] == 6));
  }
}

TEST_CASE("configuration parsing") {
  const auto config = nlohmann::json::parse(R"({
    "experiment": "snr_sweep", "n": [50, 100], "m": {"rule": "ceil_c_ln_n", "c": 3},
    "snr_db": [-10, 25], "alpha": ["harmonic", 0.3], "tau": 40, "t_max": [100],
    "reset_schedule": "one_shot", "realizations": 7, "seed": 99, "game": "naive",
    "weights": {"w_min": 0.5, "w_max": 2}, "threads": 3, "out": "ignored"
  })");
  const ExperimentSpec spec = ParseExperimentSpec(config);
  CHECK(spec.kind == ExperimentKind::kSnrSweep);
  CHECK(spec.n_values == std::vector<int>{50, 100});
  CHECK(spec.m_rule.kind == MRule::Kind::kCeilCLnN);
  CHECK(spec.m_rule.value == 3.0);
  CHECK(spec.snr_db == std::vector<double>{-10.0, 25.0});
  REQUIRE(spec.alpha.size() == 2);
  CHECK(spec.alpha[0].kind == StepSize::Kind::kHarmonic);
  CHECK(spec.alpha[1].value == 0.3);
  CHECK(spec.tau == std::vector<int>{40});
  CHECK(spec.reset_schedule == ResetSchedule::kOneShot);
  CHECK(spec.realizations == 7);
  CHECK(spec.base_seed == 99);
  CHECK(spec.game == GameKind::kNaive);
  REQUIRE(spec.weight_range.has_value());
  CHECK(spec.weight_range->second == 2.0);

  const ExperimentSpec round_trip = ParseExperimentSpec(
      nlohmann::json::parse(ExperimentSpecToJson(spec).dump()));
  CHECK(ExperimentSpecToJson(round_trip).dump() == ExperimentSpecToJson(spec).dump());

  auto code_of = [](const char* text) {
    try {
      ParseExperimentSpec(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code_of(R"({"bogus": 1})") == ErrorCode::kInvalidConfig);
  CHECK(code_of(R"({"experiment": "nope"})") == ErrorCode::kInvalidConfig);
  CHECK(code_of(R"({"n": 0})") == ErrorCode::kInvalidConfig);
  CHECK(code_of(R"({"alpha": 2.0})") == ErrorCode::kInvalidConfig);
  CHECK(code_of(R"({"m": {"rule": "other"}})") == ErrorCode::kInvalidConfig);
  CHECK(code_of(R"({"n": "ten"})") == ErrorCode::kInvalidConfig);
}

TEST_CASE("convergence example reaches a near-optimal sum rate") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kConvergence;
  spec.n_values = {100};
  spec.realizations = 4;
  spec.base_seed = 1;
  spec.threads = 1;
  const ResultSet results = RunExperiment(spec);
  const Aggregate* converged = Find(results.grid[0], "converged");
  REQUIRE(converged != nullptr);
  CHECK(converged->mean > 0.0);
  const Aggregate* ratio = Find(results.grid[0], "ratio_sum_rate");
  REQUIRE(ratio != nullptr);
  CHECK(ratio->mean >= 0.9);
}

TEST_CASE("small experiment kinds produce their metrics") {
  ExperimentSpec spec;
  spec.n_values = {3};
  spec.m_rule = MRule::Fixed(2);
  spec.realizations = 3;
  spec.threads = 1;
  spec.t_max = {50};

  spec.kind = ExperimentKind::kLemma1Check;
  auto grid = RunExperiment(spec).grid[0];
  CHECK(Find(grid, "strong_interference")->mean == 1.0);
  CHECK(Find(grid, "n_pne")->mean == 6.0);
  CHECK(Find(grid, "pne_are_permutations")->mean == 1.0);

  spec.kind = ExperimentKind::kMatchingCheck;
  grid = RunExperiment(spec).grid[0];
  CHECK(Find(grid, "count_bound_holds")->mean == 1.0);

  spec.kind = ExperimentKind::kFpEquivalence;
  grid = RunExperiment(spec).grid[0];
  CHECK(Find(grid, "traces_identical")->mean == 1.0);
  CHECK(Find(grid, "mismatched_rounds")->mean == 0.0);

  spec.kind = ExperimentKind::kRatesVsN;
  spec.n_values = {10, 20};
  const auto rates = RunExperiment(spec);
  CHECK(rates.grid.size() == 2);
  CHECK(Find(rates.grid[1], "opt_sum_rate") != nullptr);
}

}  // namespace
}  // namespace fsig
