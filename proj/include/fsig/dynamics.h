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

#ifndef FSIG_DYNAMICS_H_
#define FSIG_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "fsig/equilibrium.h"
#include "fsig/game.h"
#include "fsig/rng.h"

namespace fsig {

// Step size of the fictitious utility update. kHarmonic uses
// alpha_t = 1/(t+1), which keeps U-bar proportional to the empirical mean
// utility (classic fictitious play).
struct StepSize {
  enum class Kind { kConstant, kHarmonic };
  Kind kind = Kind::kConstant;
  double value = 0.5;

  static StepSize Constant(double alpha) { return {Kind::kConstant, alpha}; }
  static StepSize Harmonic() { return {Kind::kHarmonic, 0.0}; }

  double At(int local_t) const {
    return kind == Kind::kHarmonic ? 1.0 / (local_t + 1.0) : value;
  }
};

enum class ResetSchedule {
  // Each user checks whenever its own clock (iterations since its last
  // reset) is a positive multiple of tau.
  kRecurring,
  // A single check at global iteration tau.
  kOneShot,
};

struct DynamicsConfig {
  StepSize alpha = StepSize::Constant(0.5);
  int tau = 60;  // 0 disables the reset check
  int t_max = 300;
  ResetSchedule reset_schedule = ResetSchedule::kRecurring;
  // Stop once the same PNE has been played in two consecutive rounds. From
  // then on no interference vector changes, so no reset fires and the
  // profile is repeated forever; the omitted records would be identical.
  bool stop_at_pne = false;

  void Validate() const;
};

// Learner state for all users. Per-user vectors are indexed by position in
// game.Strategies(n), not by channel index.
struct FpState {
  int t = 0;
  std::vector<int> local_t;
  std::vector<std::vector<double>> u_bar;
  Allocation last_alloc;
  std::vector<std::vector<double>> interference;
  std::vector<std::vector<double>> prev_interference;
  std::vector<Rng> rngs;
  int resets = 0;
};

// All U-bar start at zero; the first action of each user is drawn uniformly
// from its strategy set. Per-user random streams derive from `seed`.
FpState MfpInit(const Game& game, std::uint64_t seed);

// One synchronous round: choose argmax U-bar (incumbent kept when maximal,
// else lowest channel), sense I_{n,k} on every tracked channel, update U-bar.
void MfpStep(FpState& state, const Game& game, const DynamicsConfig& config);

// Convergence check: users due for a check whose interference vector changed
// since the previous round zero their U-bar, restart their clock, and redraw
// their next action uniformly. Returns the number of users reset.
int MfpResetCheck(FpState& state, const Game& game,
                  const DynamicsConfig& config);

struct IterationRecord {
  int t = 0;
  Allocation alloc;
  double sum_rate = 0.0;  // W(a)
  double min_rate = 0.0;
  int n_sharing = 0;
  bool is_pne = false;
  int resets = 0;  // cumulative
};

enum class TerminalStatus { kConvergedToPne, kIterationCapReached };

std::string_view TerminalStatusName(TerminalStatus status);

struct Trajectory {
  std::vector<IterationRecord> records;
  TerminalStatus status = TerminalStatus::kIterationCapReached;
  std::optional<int> first_pne_t;
  // True when the profile at first_pne_t is played through the last record.
  bool held_after_first_pne = false;
  // First t from which a PNE is played through the last record.
  std::optional<int> converged_t;
  int resets = 0;

  const Allocation& final_alloc() const { return records.back().alloc; }
};

Trajectory RunDynamics(const Game& game, const DynamicsConfig& config,
                       std::uint64_t seed);

// Joint-strategy fictitious play with perfect information: each user keeps
// exact empirical frequencies of rival profiles and best-responds to the
// expected utility under them. Shares MfpInit's first-round draws. Throws
// kBudgetExceeded when K^(N-1) > budget.
Trajectory RunJointFpReference(const Game& game, int t_max, std::uint64_t seed,
                               std::uint64_t budget = 1'000'000);

// One JSON object per line: {t, alloc, sum_rate, min_rate, n_sharing,
// is_pne, resets}.
void WriteTrajectoryJsonl(const Trajectory& trajectory, std::ostream& out);

}  // namespace fsig

#endif  // FSIG_DYNAMICS_H_
