// Copyright 2026 The AOG Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AOG_METRICS_H_
#define AOG_METRICS_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aog/games.h"
#include "aog/geometry.h"

namespace aog {

struct EquilibriumMeasures {
  double r_tan = 0.0;
  // Absent on unbounded sets.
  std::optional<double> gap;
  // Sum of per-player linearized gaps; equals `gap` on product sets.
  std::optional<double> tgap_upper;
  // Exact total gap, only when every player has an exact best response.
  std::optional<double> tgap_exact;
};

// Tangent residual, gap and total gap of `profile`. `gradient` must be
// V(profile).
EquilibriumMeasures MeasureEquilibrium(const GameOracle& game,
                                       const Vector& profile,
                                       const Vector& gradient);
EquilibriumMeasures MeasureEquilibrium(const GameOracle& game,
                                       const Vector& profile);

struct PlayedRound {
  Vector action;
  Vector gradient;
};

// max over x in set of sum_t <g_t, x_t - x>, in closed form.
// UnsupportedError on unbounded sets.
double ExternalRegret(std::span<const PlayedRound> trace,
                      const FeasibleSet& set);

// Streaming form of ExternalRegret.
class ExternalRegretAccumulator {
 public:
  explicit ExternalRegretAccumulator(FeasibleSet set);
  void Add(const Vector& action, const Vector& gradient);
  // UnsupportedError on unbounded sets.
  double value() const;
  // sum_t <g_t, x_t>.
  double linear_loss() const { return played_; }

 private:
  FeasibleSet set_;
  Vector gradient_sum_;
  double played_ = 0.0;
};

// Per-player cumulative sum of loss^i(x_t) - min_{x'} loss^i(x', x^{-i}_t).
// When some player lacks an exact best response, every player falls back to
// its linearized gap term, an upper bound by convexity.
class DynamicRegretAccumulator {
 public:
  explicit DynamicRegretAccumulator(const GameOracle& game);
  // `gradient` must be V(profile).
  void Add(const Vector& profile, const Vector& gradient);
  bool exact() const { return exact_; }
  // Absent for a player whose set is unbounded in upper-bound mode.
  std::vector<std::optional<double>> values() const;

 private:
  const GameOracle* game_;
  bool exact_;
  std::vector<double> sums_;
  std::vector<bool> available_;
};

struct DynamicRegretResult {
  std::vector<std::optional<double>> per_player;
  bool exact = false;
};

DynamicRegretResult DynamicRegret(std::span<const Vector> profiles,
                                  const GameOracle& game);

// Everything the potential at round t >= 2 needs. All vectors are joint
// profiles; gradients are V at the named point.
struct PotentialInputs {
  int t = 2;
  double step = 0.0;
  Vector anchor;           // x_1
  Vector prev_iterate;     // x_{t-1}
  Vector prev_half;        // x_{t-1/2}
  Vector iterate;          // x_t
  Vector grad_prev_half;   // V(x_{t-1/2})
  Vector grad_iterate;     // V(x_t)
};

struct PotentialWitness {
  // c_t = (x_{t-1} - eta V(x_{t-1/2}) + (x_1 - x_{t-1}) / t - x_t) / eta.
  Vector normal;
  double value = 0.0;              // P_t
  double residual_sq = 0.0;        // |eta V(x_t) + eta c_t|^2
  double drift_sq = 0.0;           // |eta V(x_t) - eta V(x_{t-1/2})|^2
  double inner = 0.0;              // <eta V(x_t) + eta c_t, x_t - x_1>
  bool in_normal_cone = false;     // Pi[x_t + c_t] == x_t per player
};

// P_t = t(t+1)/2 (residual_sq + drift_sq) + t * inner. InvalidArgumentError
// for t < 2 or a nonpositive step.
PotentialWitness ComputePotential(const FeasibleSet& joint_set,
                                  const PotentialInputs& in);

// sum_{t=2}^{T} |g_t - g_{t-1}|^2 over consecutive gradients (index 0 is
// round 1). InvalidArgumentError for fewer than 2 rounds or mixed dims.
double SecondOrderVariation(std::span<const Vector> gradients);

// One per-round metric row; a run's CSV trace is a sequence of these.
struct RunRecord {
  int t = 0;
  double r_tan = 0.0;
  std::optional<double> gap;
  std::optional<double> tgap_exact;
  std::optional<double> potential;
  std::vector<double> eta;
  std::vector<double> variation;
  std::vector<std::optional<double>> ext_regret;
  std::vector<std::optional<double>> dyn_regret;
  double dist_half = 0.0;    // |x_{t+1/2} - x_t|
  double dist_anchor = 0.0;  // |x_1 - x_t|

  // Not part of the CSV schema; kept for trace verification.
  std::vector<double> losses;
  std::optional<double> residual_proxy;   // |V(x_t) + c_t|
  std::optional<double> gradient_drift;   // |V(x_t) - V(x_{t-1/2})|
  std::optional<double> residual_sq;      // |eta V(x_t) + eta c_t|^2
  std::optional<double> drift_sq;         // |eta V(x_t) - eta V(x_{t-1/2})|^2
  std::optional<bool> normal_cone_ok;
};

// t,r_tan,gap,tgap_exact,potential,eta_1..eta_N,S_1..S_N,extreg_1..extreg_N,
// dynreg_1..dynreg_N,dist_half,dist_anchor
std::string CsvHeader(int num_players);
// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double value);
void WriteCsv(std::ostream& out, std::span<const RunRecord> rows,
              int num_players);

// Names accepted by RecordColumn: every CSV column name.
std::optional<double> RecordColumn(const RunRecord& row,
                                   const std::string& column);

}  // namespace aog

#endif  // AOG_METRICS_H_
