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

#include "fsig/results_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fsig/error.h"

namespace fsig {

namespace {

using nlohmann::json;

// Shortest text that reads back to the same double.
std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

template <typename T>
std::vector<T> AsList(const json& value) {
  if (value.is_array()) return value.get<std::vector<T>>();
  return {value.get<T>()};
}

}  // namespace

ResetSchedule ParseResetSchedule(std::string_view name) {
  if (name == "recurring") return ResetSchedule::kRecurring;
  if (name == "one_shot") return ResetSchedule::kOneShot;
  Fail(ErrorCode::kInvalidConfig,
       "unknown reset schedule '" + std::string(name) + "' (recurring|one_shot)");
}

std::string_view ResetScheduleName(ResetSchedule schedule) {
  return schedule == ResetSchedule::kRecurring ? "recurring" : "one_shot";
}

std::string FormatStepSize(const StepSize& alpha) {
  return alpha.kind == StepSize::Kind::kHarmonic ? "harmonic"
                                                 : FormatDouble(alpha.value);
}

StepSize ParseStepSize(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "harmonic") return StepSize::Harmonic();
    return StepSize::Constant(std::stod(value.get<std::string>()));
  }
  return StepSize::Constant(value.get<double>());
}

std::string ResultsCsv(const ResultSet& results) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  const std::string_view kind = ExperimentKindName(results.kind);
  for (const GridResult& grid : results.grid) {
    const GridPoint& p = grid.point;
    for (const Aggregate& agg : grid.aggregates) {
      out << kind << ',' << p.n << ',' << p.k << ',' << p.m << ','
          << FormatDouble(p.snr_db) << ',' << FormatStepSize(p.alpha) << ','
          << p.tau << ',' << p.t_max << ',' << results.realizations << ','
          << agg.metric << ',' << FormatDouble(agg.mean) << ','
          << FormatDouble(agg.std) << '\n';
    }
  }
  return out.str();
}

std::string ResultsJsonl(const ResultSet& results) {
  std::ostringstream out;
  for (const GridResult& grid : results.grid) {
    const GridPoint& p = grid.point;
    for (const RealizationRow& row : grid.rows) {
      nlohmann::ordered_json line;
      line["schema_version"] = kResultsSchemaVersion;
      line["experiment"] = ExperimentKindName(results.kind);
      line["n"] = p.n;
      line["k"] = p.k;
      line["m"] = p.m;
      line["snr_db"] = p.snr_db;
      line["alpha"] = FormatStepSize(p.alpha);
      line["tau"] = p.tau;
      line["t_max"] = p.t_max;
      line["realization"] = row.index;
      line["seed"] = row.seed;
      nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
      for (const Metric& metric : row.metrics) metrics[metric.name] = metric.value;
      line["metrics"] = std::move(metrics);
      if (!row.error.empty()) line["error"] = row.error;
      out << line.dump() << '\n';
    }
  }
  return out.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    Fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  }
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) Fail(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

void EmitResults(const ResultSet& results, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    Fail(ErrorCode::kIo,
         "cannot create directory '" + dir.string() + "': " + ec.message());
  }
  WriteTextFile(dir / "results.csv", ResultsCsv(results));
  WriteTextFile(dir / "realizations.jsonl", ResultsJsonl(results));
}

ExperimentSpec ParseExperimentSpec(const json& config, ExperimentSpec spec) {
  if (!config.is_object()) {
    Fail(ErrorCode::kInvalidConfig, "config must be a JSON object");
  }
  try {
    for (const auto& [key, value] : config.items()) {
      if (key == "experiment") {
        spec.kind = ParseExperimentKind(value.get<std::string>());
      } else if (key == "n") {
        spec.n_values = AsList<int>(value);
      } else if (key == "k") {
        if (value.is_null()) {
          spec.n_channels.reset();
        } else {
          spec.n_channels = value.get<int>();
        }
      } else if (key == "m") {
        if (value.is_object()) {
          const std::string rule = value.at("rule").get<std::string>();
          if (rule == "fixed") {
            spec.m_rule = MRule::Fixed(value.at("value").get<int>());
          } else if (rule == "ceil_c_ln_n") {
            spec.m_rule = MRule::CeilCLnN(value.at("c").get<double>());
          } else {
            Fail(ErrorCode::kInvalidConfig,
                 "unknown M rule '" + rule + "' (fixed|ceil_c_ln_n)");
          }
        } else {
          spec.m_rule = MRule::Fixed(value.get<int>());
        }
      } else if (key == "snr_db") {
        spec.snr_db = AsList<double>(value);
      } else if (key == "alpha") {
        spec.alpha.clear();
        if (value.is_array()) {
          for (const auto& item : value) spec.alpha.push_back(ParseStepSize(item));
        } else {
          spec.alpha.push_back(ParseStepSize(value));
        }
      } else if (key == "tau") {
        spec.tau = AsList<int>(value);
      } else if (key == "t_max") {
        spec.t_max = AsList<int>(value);
      } else if (key == "reset_schedule") {
        spec.reset_schedule = ParseResetSchedule(value.get<std::string>());
      } else if (key == "realizations") {
        spec.realizations = value.get<int>();
      } else if (key == "seed") {
        spec.base_seed = value.get<std::uint64_t>();
      } else if (key == "game") {
        spec.game = ParseGameKind(value.get<std::string>());
      } else if (key == "noise") {
        spec.noise = value.get<double>();
      } else if (key == "weights") {
        spec.weight_range = {value.at("w_min").get<double>(),
                             value.at("w_max").get<double>()};
      } else if (key == "cross_gain_scale") {
        spec.cross_gain_scale = value.get<double>();
      } else if (key == "budget") {
        spec.enumeration_budget = value.get<std::uint64_t>();
      } else if (key == "threads") {
        spec.threads = value.get<int>();
      } else if (key == "out") {
        // Output location is owned by the caller.
      } else {
        Fail(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("malformed config: ") + e.what());
  }
  spec.Validate();
  return spec;
}

nlohmann::ordered_json ExperimentSpecToJson(const ExperimentSpec& spec) {
  nlohmann::ordered_json out;
  out["experiment"] = ExperimentKindName(spec.kind);
  out["n"] = spec.n_values;
  out["k"] = spec.n_channels ? json(*spec.n_channels) : json(nullptr);
  if (spec.m_rule.kind == MRule::Kind::kFixed) {
    out["m"] = {{"rule", "fixed"}, {"value", static_cast<int>(spec.m_rule.value)}};
  } else {
    out["m"] = {{"rule", "ceil_c_ln_n"}, {"c", spec.m_rule.value}};
  }
  out["snr_db"] = spec.snr_db;
  std::vector<json> alphas;
  for (const StepSize& a : spec.alpha) {
    alphas.push_back(a.kind == StepSize::Kind::kHarmonic ? json("harmonic")
                                                         : json(a.value));
  }
  out["alpha"] = alphas;
  out["tau"] = spec.tau;
  out["t_max"] = spec.t_max;
  out["reset_schedule"] = ResetScheduleName(spec.reset_schedule);
  out["realizations"] = spec.realizations;
  out["seed"] = spec.base_seed;
  out["game"] = GameKindName(spec.game);
  out["noise"] = spec.noise;
  if (spec.weight_range) {
    out["weights"] = {{"w_min", spec.weight_range->first},
                      {"w_max", spec.weight_range->second}};
  }
  out["cross_gain_scale"] = spec.cross_gain_scale;
  out["budget"] = spec.enumeration_budget;
  out["threads"] = spec.threads;
  return out;
}

}  // namespace fsig
