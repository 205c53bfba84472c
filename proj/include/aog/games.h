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

#ifndef AOG_GAMES_H_
#define AOG_GAMES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "aog/geometry.h"

namespace aog {

using Matrix = Eigen::MatrixXd;

// Joint action (x^1, ..., x^N) stored as one flat vector with per-player
// block offsets.
class ActionProfile {
 public:
  ActionProfile() = default;
  ActionProfile(Vector flat, std::vector<int> player_dims);

  static ActionProfile FromBlocks(const std::vector<Vector>& blocks);

  int num_players() const { return static_cast<int>(player_dims_.size()); }
  const std::vector<int>& player_dims() const { return player_dims_; }
  int offset(int player) const { return offsets_.at(player); }

  const Vector& flat() const { return flat_; }
  Vector block(int player) const;
  std::vector<Vector> blocks() const;

 private:
  Vector flat_;
  std::vector<int> player_dims_;
  std::vector<int> offsets_;
};

struct BestResponse {
  Vector action;
  double value;
};

struct ProbeOptions {
  bool enabled = true;
  std::uint64_t seed = 42;
  int pairs = 1000;
};

// Worst observed violations over the sampled pairs.
struct ProbeReport {
  // min over pairs of <V(x)-V(x'), x-x'> / |x-x'|^2 (>= 0 for monotone V).
  double min_monotonicity_ratio = 0.0;
  // max over pairs of |V(x)-V(x')| / |x-x'|.
  double max_lipschitz_ratio = 0.0;
};

// Gradient operator V = (V^1, ..., V^N) of an N-player game together with
// the player sets, a Lipschitz bound and, when available, losses and exact
// best responses. Immutable after construction.
class GameOracle {
 public:
  using GradientFn = std::function<Vector(const Vector&)>;
  using LossFn = std::function<double(int, const Vector&)>;
  // Returns nullopt when no exact best response exists at this profile.
  using BestResponseFn =
      std::function<std::optional<BestResponse>(int, const Vector&)>;

  struct Definition {
    std::string name;
    std::vector<FeasibleSet> player_sets;
    double lipschitz = 1.0;
    GradientFn gradient;
    LossFn loss;                           // optional
    BestResponseFn best_response;          // optional
    std::vector<bool> has_best_response;   // per player; empty = none
    std::optional<Vector> known_equilibrium;
    std::optional<Vector> default_start;
    bool zero_sum = false;
  };

  // Runs the monotonicity and Lipschitz probes unless disabled; throws
  // InvalidArgumentError when either is violated.
  explicit GameOracle(Definition definition, ProbeOptions probes = {});

  const std::string& name() const { return def_.name; }
  int num_players() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& player_dims() const { return dims_; }
  int offset(int player) const { return offsets_.at(player); }
  int dim() const { return joint_set_.dim(); }
  const FeasibleSet& player_set(int player) const {
    return def_.player_sets.at(player);
  }
  const FeasibleSet& joint_set() const { return joint_set_; }
  double lipschitz() const { return def_.lipschitz; }
  std::optional<double> diameter() const { return Diameter(joint_set_); }
  bool zero_sum() const { return def_.zero_sum; }
  const std::optional<Vector>& known_equilibrium() const {
    return def_.known_equilibrium;
  }
  // x_1 used when a run does not specify one.
  Vector default_start() const;

  // Full gradient V(x). DomainError when x is infeasible.
  Vector Gradient(const Vector& profile) const;
  ActionProfile Gradient(const ActionProfile& profile) const;
  // Player slice V^i(x).
  Vector PlayerGradient(int player, const Vector& profile) const;

  bool has_losses() const { return static_cast<bool>(def_.loss); }
  double Loss(int player, const Vector& profile) const;

  bool HasBestResponse(int player) const;
  bool HasAllBestResponses() const;
  // Exact minimizer of loss^i(., x^{-i}); UnsupportedError if unavailable.
  BestResponse BestRespond(int player, const Vector& profile) const;

  ProbeReport Probe(const ProbeOptions& options) const;

 private:
  void CheckProfile(const Vector& profile) const;

  Definition def_;
  FeasibleSet joint_set_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
};

struct LinearGameExtras {
  // Defaults to the spectral norm of M.
  std::optional<double> lipschitz;
  std::optional<Vector> known_equilibrium;
  std::optional<Vector> default_start;
  bool zero_sum = false;
};

// Game with affine operator V(z) = M z + r. Per-player losses
// 1/2 z_i' M_ii z_i + z_i' (sum_{j != i} M_ij z_j + r_i) are exposed when
// every diagonal block is symmetric; exact best responses exist for players
// whose diagonal block is mu * I (mu >= 0) on a bounded set, or mu > 0 on
// any set.
GameOracle MakeLinearGame(std::string name, const Matrix& m, const Vector& r,
                          std::vector<FeasibleSet> player_sets,
                          LinearGameExtras extras = {},
                          ProbeOptions probes = {});

// Two-player zero-sum game f(x, y) = scale * <x, y> over [-radius, radius]
// boxes; player 1 minimizes f, player 2 minimizes -f.
GameOracle MakeBilinearSaddle(double scale, double radius, int dim_x,
                              int dim_y, ProbeOptions probes = {});

// f(y1, y2) = y1 * y2 on [-1, 1]^2. Online EAG suffers linear regret here.
GameOracle MakeAppendixDToy(ProbeOptions probes = {});

// f(x, y) = 1/2 x'Hx - h'x - <Ax - b, y> with a banded anti-diagonal A,
// b = 1/4, h = e_n / 4, H = 2 A'A, over [-w, w]^n per player.
GameOracle MakeAppendixEInstance(int n, double box_half_width,
                                 ProbeOptions probes = {});

// The n x n matrix A of the instance above, 1/4 factor included.
Matrix AppendixEMatrix(int n);

struct RandomLinearOptions {
  std::vector<int> player_dims = {1, 1};
  // Half width of each player's box; nullopt for unconstrained players.
  std::optional<double> box_half_width;
  // Diagonal shift epsilon in M = K + epsilon * I.
  double epsilon = 0.1;
  double coupling_scale = 1.0;
  std::uint64_t seed = 42;
};

// V(z) = (K + epsilon I) z + r with K a seeded random skew-symmetric matrix
// whose diagonal blocks are zero. Monotone with an exact Nash equilibrium
// -M^{-1} r when unconstrained and epsilon > 0.
GameOracle MakeRandomLinearMonotone(const RandomLinearOptions& options,
                                    ProbeOptions probes = {});

// Largest singular value of `m`.
double SpectralNorm(const Matrix& m);

}  // namespace aog

#endif  // AOG_GAMES_H_
