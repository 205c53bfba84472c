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

#include "aog/games.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "Eigen/Dense"
#include "aog/errors.h"

namespace aog {
namespace {

std::vector<int> Offsets(const std::vector<int>& dims) {
  std::vector<int> offsets(dims.size());
  int at = 0;
  for (size_t i = 0; i < dims.size(); ++i) {
    offsets[i] = at;
    at += dims[i];
  }
  return offsets;
}

std::vector<int> DimsOf(const std::vector<FeasibleSet>& sets) {
  std::vector<int> dims;
  dims.reserve(sets.size());
  for (const FeasibleSet& s : sets) dims.push_back(s.dim());
  return dims;
}

FeasibleSet JointSet(const std::vector<FeasibleSet>& sets) {
  if (sets.empty()) throw InvalidArgumentError("game needs at least 1 player");
  return FeasibleSet::MakeProduct(sets);
}

}  // namespace

ActionProfile::ActionProfile(Vector flat, std::vector<int> player_dims)
    : flat_(std::move(flat)),
      player_dims_(std::move(player_dims)),
      offsets_(Offsets(player_dims_)) {
  long total = 0;
  for (int d : player_dims_) {
    if (d <= 0) throw InvalidArgumentError("player dimension must be > 0");
    total += d;
  }
  if (total != flat_.size()) {
    throw InvalidArgumentError("profile size does not match player dims");
  }
}

ActionProfile ActionProfile::FromBlocks(const std::vector<Vector>& blocks) {
  std::vector<int> dims;
  long total = 0;
  for (const Vector& b : blocks) {
    dims.push_back(static_cast<int>(b.size()));
    total += b.size();
  }
  Vector flat(total);
  long at = 0;
  for (const Vector& b : blocks) {
    flat.segment(at, b.size()) = b;
    at += b.size();
  }
  return ActionProfile(std::move(flat), std::move(dims));
}

Vector ActionProfile::block(int player) const {
  return flat_.segment(offsets_.at(player), player_dims_.at(player));
}

std::vector<Vector> ActionProfile::blocks() const {
  std::vector<Vector> out;
  for (int i = 0; i < num_players(); ++i) out.push_back(block(i));
  return out;
}

GameOracle::GameOracle(Definition definition, ProbeOptions probes)
    : def_(std::move(definition)),
      joint_set_(JointSet(def_.player_sets)),
      dims_(DimsOf(def_.player_sets)),
      offsets_(Offsets(dims_)) {
  if (!def_.gradient) throw InvalidArgumentError("game needs a gradient");
  if (!(def_.lipschitz > 0.0)) {
    throw InvalidArgumentError("Lipschitz bound must be positive");
  }
  if (!def_.has_best_response.empty() &&
      def_.has_best_response.size() != dims_.size()) {
    throw InvalidArgumentError("best-response flags must be per player");
  }
  if (probes.enabled) {
    const ProbeReport report = Probe(probes);
    if (report.min_monotonicity_ratio < -1e-10) {
      throw InvalidArgumentError(def_.name + ": operator is not monotone (" +
                                 std::to_string(report.min_monotonicity_ratio) +
                                 ")");
    }
    if (report.max_lipschitz_ratio > def_.lipschitz + 1e-8) {
      throw InvalidArgumentError(
          def_.name + ": Lipschitz bound " + std::to_string(def_.lipschitz) +
          " violated (" + std::to_string(report.max_lipschitz_ratio) + ")");
    }
  }
}

Vector GameOracle::default_start() const {
  if (def_.default_start) return *def_.default_start;
  return Project(joint_set_, Vector::Zero(dim()));
}

void GameOracle::CheckProfile(const Vector& profile) const {
  if (profile.size() != dim()) {
    throw InvalidArgumentError("profile has dimension " +
                               std::to_string(profile.size()) +
                               ", game has " + std::to_string(dim()));
  }
  if (!Contains(joint_set_, profile)) {
    throw DomainError(def_.name + ": profile is infeasible");
  }
}

Vector GameOracle::Gradient(const Vector& profile) const {
  CheckProfile(profile);
  return def_.gradient(profile);
}

ActionProfile GameOracle::Gradient(const ActionProfile& profile) const {
  return ActionProfile(Gradient(profile.flat()), dims_);
}

Vector GameOracle::PlayerGradient(int player, const Vector& profile) const {
  return Gradient(profile).segment(offset(player), dims_.at(player));
}

double GameOracle::Loss(int player, const Vector& profile) const {
  if (!def_.loss) throw UnsupportedError(def_.name + " exposes no losses");
  CheckProfile(profile);
  return def_.loss(player, profile);
}

bool GameOracle::HasBestResponse(int player) const {
  return def_.best_response && !def_.has_best_response.empty() &&
         def_.has_best_response.at(player);
}

bool GameOracle::HasAllBestResponses() const {
  for (int i = 0; i < num_players(); ++i) {
    if (!HasBestResponse(i)) return false;
  }
  return true;
}

BestResponse GameOracle::BestRespond(int player, const Vector& profile) const {
  if (!HasBestResponse(player)) {
    throw UnsupportedError(def_.name + ": no exact best response for player " +
                           std::to_string(player + 1));
  }
  CheckProfile(profile);
  std::optional<BestResponse> br = def_.best_response(player, profile);
  if (!br) {
    throw UnsupportedError(def_.name + ": best response unavailable here");
  }
  return *std::move(br);
}

ProbeReport GameOracle::Probe(const ProbeOptions& options) const {
  std::mt19937_64 rng(options.seed);
  ProbeReport report;
  report.min_monotonicity_ratio = std::numeric_limits<double>::infinity();
  for (int k = 0; k < options.pairs; ++k) {
    const Vector x = SamplePoint(joint_set_, rng);
    const Vector y = SamplePoint(joint_set_, rng);
    const Vector dx = x - y;
    const double dist2 = dx.squaredNorm();
    if (dist2 == 0.0) continue;
    const Vector dv = def_.gradient(x) - def_.gradient(y);
    report.min_monotonicity_ratio =
        std::min(report.min_monotonicity_ratio, dv.dot(dx) / dist2);
    report.max_lipschitz_ratio =
        std::max(report.max_lipschitz_ratio, dv.norm() / std::sqrt(dist2));
  }
  if (!std::isfinite(report.min_monotonicity_ratio)) {
    report.min_monotonicity_ratio = 0.0;
  }
  return report;
}

double SpectralNorm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

GameOracle MakeLinearGame(std::string name, const Matrix& m, const Vector& r,
                          std::vector<FeasibleSet> player_sets,
                          LinearGameExtras extras, ProbeOptions probes) {
  const std::vector<int> dims = DimsOf(player_sets);
  const std::vector<int> offsets = Offsets(dims);
  const int n = static_cast<int>(r.size());
  if (m.rows() != n || m.cols() != n) {
    throw InvalidArgumentError("linear game: M must be square and match r");
  }
  int total = 0;
  for (int d : dims) total += d;
  if (total != n) {
    throw InvalidArgumentError("linear game: player dims do not sum to dim");
  }

  bool symmetric_blocks = true;
  std::vector<bool> has_br(dims.size(), false);
  std::vector<double> mu(dims.size(), 0.0);
  for (size_t i = 0; i < dims.size(); ++i) {
    const Matrix block = m.block(offsets[i], offsets[i], dims[i], dims[i]);
    if (block != block.transpose()) symmetric_blocks = false;
    const double diag = block(0, 0);
    const bool isotropic =
        diag >= 0.0 &&
        block == Matrix::Identity(dims[i], dims[i]) * diag;
    mu[i] = diag;
    has_br[i] = isotropic && (diag > 0.0 || player_sets[i].is_bounded());
  }

  GameOracle::Definition def;
  def.name = std::move(name);
  def.lipschitz = extras.lipschitz ? *extras.lipschitz : SpectralNorm(m);
  def.known_equilibrium = std::move(extras.known_equilibrium);
  def.default_start = std::move(extras.default_start);
  def.zero_sum = extras.zero_sum;
  def.gradient = [m, r](const Vector& z) -> Vector { return m * z + r; };
  if (symmetric_blocks) {
    def.loss = [m, r, dims, offsets](int i, const Vector& z) {
      const Vector zi = z.segment(offsets[i], dims[i]);
      const Matrix mii = m.block(offsets[i], offsets[i], dims[i], dims[i]);
      const Vector full = m.middleRows(offsets[i], dims[i]) * z;
      // full = M_ii z_i + sum_{j != i} M_ij z_j.
      const Vector cross = full - mii * zi;
      return 0.5 * zi.dot(mii * zi) + zi.dot(cross) +
             zi.dot(r.segment(offsets[i], dims[i]));
    };
    def.has_best_response = has_br;
    def.best_response = [m, r, dims, offsets, mu, sets = player_sets,
                         loss = def.loss](int i, const Vector& z)
        -> std::optional<BestResponse> {
      const Vector zi = z.segment(offsets[i], dims[i]);
      // Own-action-independent linear coefficient.
      const Vector a = (m.middleRows(offsets[i], dims[i]) * z).eval() -
                       mu[i] * zi + r.segment(offsets[i], dims[i]);
      Vector action;
      if (mu[i] > 0.0) {
        action = Project(sets[i], (-a / mu[i]).eval());
      } else if (sets[i].is_bounded()) {
        action = LinearMinimizer(sets[i], a);
      } else {
        return std::nullopt;
      }
      Vector deviated = z;
      deviated.segment(offsets[i], dims[i]) = action;
      return BestResponse{std::move(action), loss(i, deviated)};
    };
  }
  def.player_sets = std::move(player_sets);
  return GameOracle(std::move(def), probes);
}

GameOracle MakeBilinearSaddle(double scale, double radius, int dim_x,
                              int dim_y, ProbeOptions probes) {
  if (!(scale > 0.0) || !(radius > 0.0)) {
    throw InvalidArgumentError("bilinear: scale and radius must be positive");
  }
  if (dim_x <= 0 || dim_x != dim_y) {
    throw InvalidArgumentError("bilinear: player dims must be equal and > 0");
  }
  const int n = dim_x + dim_y;
  Matrix m = Matrix::Zero(n, n);
  m.block(0, dim_x, dim_x, dim_y) = scale * Matrix::Identity(dim_x, dim_y);
  m.block(dim_x, 0, dim_y, dim_x) = -scale * Matrix::Identity(dim_y, dim_x);
  std::vector<FeasibleSet> sets = {
      FeasibleSet::MakeCube(dim_x, -radius, radius),
      FeasibleSet::MakeCube(dim_y, -radius, radius)};
  LinearGameExtras extras;
  extras.lipschitz = scale;
  extras.known_equilibrium = Vector::Zero(n);
  extras.default_start = Vector::Constant(n, 0.5 * radius);
  extras.zero_sum = true;
  return MakeLinearGame("bilinear", m, Vector::Zero(n), std::move(sets),
                        std::move(extras), probes);
}

GameOracle MakeAppendixDToy(ProbeOptions probes) {
  return MakeBilinearSaddle(1.0, 1.0, 1, 1, probes);
}

Matrix AppendixEMatrix(int n) {
  if (n < 2) throw InvalidArgumentError("appendix_e: n must be >= 2");
  Matrix a = Matrix::Zero(n, n);
  a(0, n - 1) = 1.0;
  for (int i = 1; i < n; ++i) {
    a(i, n - 1 - i) = -1.0;
    a(i, n - i) = 1.0;
  }
  return 0.25 * a;
}

GameOracle MakeAppendixEInstance(int n, double box_half_width,
                                 ProbeOptions probes) {
  if (n < 2) throw InvalidArgumentError("appendix_e: n must be >= 2");
  if (!(box_half_width > 0.0)) {
    throw InvalidArgumentError("appendix_e: box half width must be positive");
  }
  const Matrix a = AppendixEMatrix(n);
  const Matrix h_mat = 2.0 * a.transpose() * a;
  const Vector b = Vector::Constant(n, 0.25);
  Vector h = Vector::Zero(n);
  h(n - 1) = 0.25;

  // V(x, y) = (Hx - h - A'y, Ax - b).
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = h_mat;
  m.topRightCorner(n, n) = -a.transpose();
  m.bottomLeftCorner(n, n) = a;
  Vector r(2 * n);
  r << -h, -b;

  auto f = [a, h_mat, b, h, n](const Vector& z) {
    const Vector x = z.head(n);
    const Vector y = z.tail(n);
    return 0.5 * x.dot(h_mat * x) - h.dot(x) - (a * x - b).dot(y);
  };

  GameOracle::Definition def;
  def.name = "appendix_e";
  def.player_sets = {FeasibleSet::MakeCube(n, -box_half_width, box_half_width),
                     FeasibleSet::MakeCube(n, -box_half_width, box_half_width)};
  def.lipschitz = 1.0;
  def.gradient = [m, r](const Vector& z) -> Vector { return m * z + r; };
  def.loss = [f](int i, const Vector& z) { return i == 0 ? f(z) : -f(z); };
  // Player 1 faces a box QP; only player 2 (linear in y) is exact.
  def.has_best_response = {false, true};
  def.best_response = [a, b, n, f, ys = def.player_sets[1]](
                          int i,
                          const Vector& z) -> std::optional<BestResponse> {
    if (i != 1) return std::nullopt;
    const Vector coeff = a * z.head(n) - b;
    Vector y = LinearMinimizer(ys, coeff);
    Vector deviated = z;
    deviated.tail(n) = y;
    return BestResponse{std::move(y), -f(deviated)};
  };
  def.default_start = Vector::Constant(2 * n, 1.0 / n);
  def.zero_sum = true;
  return GameOracle(std::move(def), probes);
}

GameOracle MakeRandomLinearMonotone(const RandomLinearOptions& options,
                                    ProbeOptions probes) {
  if (options.player_dims.empty()) {
    throw InvalidArgumentError("random_linear_monotone: no players");
  }
  if (options.epsilon < 0.0) {
    throw InvalidArgumentError("random_linear_monotone: epsilon must be >= 0");
  }
  const std::vector<int> offsets = Offsets(options.player_dims);
  int n = 0;
  for (int d : options.player_dims) {
    if (d <= 0) throw InvalidArgumentError("player dimension must be > 0");
    n += d;
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Vector r(n);
  for (int i = 0; i < n; ++i) r(i) = normal(rng);

  Matrix k = 0.5 * options.coupling_scale * (g - g.transpose());
  for (size_t p = 0; p < options.player_dims.size(); ++p) {
    const int d = options.player_dims[p];
    k.block(offsets[p], offsets[p], d, d).setZero();
  }
  const Matrix m = k + options.epsilon * Matrix::Identity(n, n);

  std::vector<FeasibleSet> sets;
  for (int d : options.player_dims) {
    if (options.box_half_width) {
      sets.push_back(FeasibleSet::MakeCube(d, -*options.box_half_width,
                                           *options.box_half_width));
    } else {
      sets.push_back(FeasibleSet::MakeUnconstrained(d));
    }
  }
  LinearGameExtras extras;
  if (!options.box_half_width && options.epsilon > 0.0) {
    extras.known_equilibrium = Vector(m.fullPivLu().solve(-r));
    extras.default_start = Vector::Ones(n);
  } else if (options.box_half_width) {
    extras.default_start = Vector::Constant(n, 0.5 * *options.box_half_width);
  }
  return MakeLinearGame("random_linear_monotone", m, r, std::move(sets),
                        std::move(extras), probes);
}

}  // namespace aog
