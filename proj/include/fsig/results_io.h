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

#ifndef FSIG_RESULTS_IO_H_
#define FSIG_RESULTS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "fsig/experiment.h"
#include "json.hpp"

namespace fsig {

inline constexpr int kResultsSchemaVersion = 1;

// Fixed CSV column order.
inline constexpr std::string_view kCsvHeader =
    "experiment,n,k,m,snr_db,alpha,tau,t_max,realizations,metric,mean,std";

// One row per grid point per metric.
std::string ResultsCsv(const ResultSet& results);

// One JSON object per realization row.
std::string ResultsJsonl(const ResultSet& results);

// Writes <dir>/results.csv and <dir>/realizations.jsonl, creating `dir`.
// Throws kIo with the offending path on failure.
void EmitResults(const ResultSet& results, const std::filesystem::path& dir);

void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Config file schema (JSON). Every key is optional; lists may be given as
// scalars. Example:
//   {"experiment": "snr_sweep", "n": [200], "m": {"rule": "ceil_c_ln_n",
//    "c": 3}, "snr_db": [-10, 25], "alpha": 0.5, "tau": 60, "t_max": 300,
//    "realizations": 50, "seed": 7, "game": "mfsig"}
ExperimentSpec ParseExperimentSpec(const nlohmann::json& config,
                                   ExperimentSpec base = {});
nlohmann::ordered_json ExperimentSpecToJson(const ExperimentSpec& spec);

ResetSchedule ParseResetSchedule(std::string_view name);
std::string_view ResetScheduleName(ResetSchedule schedule);

std::string FormatStepSize(const StepSize& alpha);
StepSize ParseStepSize(const nlohmann::json& value);

}  // namespace fsig

#endif  // FSIG_RESULTS_IO_H_
