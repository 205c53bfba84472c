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

#ifndef AOG_HARNESS_H_
#define AOG_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aog/games.h"
#include "aog/learners.h"
#include "aog/metrics.h"
#include "json.hpp"

namespace aog {

// Optional per-run measurements; r_tan and the distance columns are always
// recorded.
struct MetricSelection {
  bool gap = true;
  bool tgap = true;
  bool potential = true;
  bool ext_regret = true;
  bool dyn_regret = true;
};

struct GameSpec {
  // "bilinear", "appendix_e", "appendix_d_toy" or "random_linear_monotone".
  std::string id;
  nlohmann::json params = nlohmann::json::object();
};

struct AdversarySpec {
  // "zero", "appendix_d" or "random".
  std::string kind = "zero";
  int dim = 1;
  double box_half_width = 1.0;
};

struct ExperimentConfig {
  std::string mode = "selfplay";  // or "adversarial"
  GameSpec game;                  // selfplay only
  AdversarySpec adversary;        // adversarial only
  // One tag per player, or a single tag applied to every player.
  std::vector<Algorithm> algorithms = {Algorithm::kAog};
  // Per-player constant step overrides (same broadcasting rule).
  std::vector<std::optional<double>> step_sizes;
  // Adaptation constants; default to the game's L and joint diameter.
  std::optional<double> lipschitz;
  std::optional<double> diameter;
  std::optional<Vector> initial_point;
  int T = 1000;
  std::uint64_t seed = 42;
  int stride = 1;
  std::string output;
  // Explicit selection, or nullopt for every metric applicable to the run.
  std::optional<MetricSelection> metrics;
};

// Parses a JSON config document; unknown keys and malformed fields raise
// ConfigError naming the field.
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const ExperimentConfig& config);

GameOracle MakeGame(const GameSpec& spec, std::uint64_t seed);

// Rows recorded for horizon T and stride k: {1, 1+k, 1+2k, ...} U {T}.
bool IsRecordedRound(int t, int horizon, int stride);

// Raw iterates of one round, for trace-level verification.
struct IterateSnapshot {
  Vector base;        // x_t
  Vector half;        // x_{t+1/2}
  Vector grad_base;   // V(x_t)
  Vector grad_half;   // V(x_{t+1/2})
};

struct SelfPlayOptions {
  bool keep_iterates = false;
};

struct SelfPlayTrace {
  int num_players = 0;
  std::vector<RunRecord> rows;
  bool dyn_regret_exact = false;
  // Common step when every player runs fixed-step AOG; potential columns are
  // filled only then.
  std::optional<double> common_step;
  std::optional<double> diameter;
  double lipschitz = 0.0;
  Vector start;
  std::vector<IterateSnapshot> iterates;
};

// Synchronous simultaneous-move self-play. ConfigError on invalid configs.
SelfPlayTrace RunSelfPlay(const ExperimentConfig& config,
                          const SelfPlayOptions& options = {});
SelfPlayTrace RunSelfPlay(const ExperimentConfig& config,
                          const GameOracle& game,
                          const SelfPlayOptions& options = {});

// Maps the played action of round t (1-based) to a gradient.
using Adversary = std::function<Vector(int, const Vector&)>;

Adversary ZeroAdversary(int dim);
// Opponent of f(y1, y2) = y1 * y2 playing 1 on odd rounds and 0 on even
// ones; the returned gradient is the one seen by player 1.
Adversary AppendixDAdversary();
// Gradients drawn uniformly from [-1, 1]^dim.
Adversary RandomBoundedAdversary(int dim, std::uint64_t seed);

struct AdversarialRow {
  int t = 0;
  double regret = 0.0;
  double eta = 0.0;
  double variation = 0.0;
};

struct AdversarialTrace {
  std::vector<AdversarialRow> rows;
  double regret = 0.0;
  double linear_loss = 0.0;
  std::vector<Vector> actions;  // filled when requested
};

struct AdversarialSetup {
  Algorithm algorithm = Algorithm::kAogAdaptive;
  LearnerConfig learner;
  FeasibleSet set = FeasibleSet::MakeCube(1, -1.0, 1.0);
  std::optional<Vector> start;  // defaults to the projection of 0
  Adversary adversary;
  int T = 1000;
  int stride = 1;
  bool keep_actions = false;
};

// Single-agent loop: propose, adversary maps the action to a gradient,
// update. AdversaryError on non-finite adversary output.
AdversarialTrace RunAdversarial(const AdversarialSetup& setup);
AdversarialTrace RunAdversarial(const ExperimentConfig& config);

void WriteAdversarialCsv(std::ostream& out,
                         std::span<const AdversarialRow> rows);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 0;
};

// Ordinary least squares of ln(value) on ln(t) over t in [t_min, t_max].
// Nonpositive values are skipped; fewer than 10 usable points raise
// InvalidArgumentError.
SlopeFit FitLogLogSlope(std::span<const double> t,
                        std::span<const double> values, double t_min,
                        double t_max);
SlopeFit FitLogLogSlope(std::span<const RunRecord> rows,
                        const std::string& column, double t_min = 100.0,
                        double t_max = 1e300);

void EmitCsv(const SelfPlayTrace& trace, const std::string& path);

}  // namespace aog

#endif  // AOG_HARNESS_H_
