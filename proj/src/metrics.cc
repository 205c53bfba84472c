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

#include "aog/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "aog/errors.h"

namespace aog {

EquilibriumMeasures MeasureEquilibrium(const GameOracle& game,
                                       const Vector& profile,
                                       const Vector& gradient) {
  EquilibriumMeasures out;
  out.r_tan = TangentResidual(game.joint_set(), profile, gradient);
  if (game.joint_set().is_bounded()) {
    out.gap = LinearizedGap(game.joint_set(), profile, gradient);
    double total = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
      const int at = game.offset(i);
      const int n = game.player_dims()[i];
      total += LinearizedGap(game.player_set(i), profile.segment(at, n),
                             gradient.segment(at, n));
    }
    out.tgap_upper = total;
  }
  if (game.has_losses() && game.HasAllBestResponses()) {
    double total = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
      total += game.Loss(i, profile) - game.BestRespond(i, profile).value;
    }
    out.tgap_exact = std::max(0.0, total);
  }
  return out;
}

EquilibriumMeasures MeasureEquilibrium(const GameOracle& game,
                                       const Vector& profile) {
  return MeasureEquilibrium(game, profile, game.Gradient(profile));
}

double ExternalRegret(std::span<const PlayedRound> trace,
                      const FeasibleSet& set) {
  ExternalRegretAccumulator acc(set);
  for (const PlayedRound& round : trace) acc.Add(round.action, round.gradient);
  return acc.value();
}

ExternalRegretAccumulator::ExternalRegretAccumulator(FeasibleSet set)
    : set_(std::move(set)), gradient_sum_(Vector::Zero(set_.dim())) {}

void ExternalRegretAccumulator::Add(const Vector& action,
                                    const Vector& gradient) {
  if (action.size() != set_.dim() || gradient.size() != set_.dim()) {
    throw InvalidArgumentError("regret: action/gradient dimension mismatch");
  }
  played_ += gradient.dot(action);
  gradient_sum_ += gradient;
}

double ExternalRegretAccumulator::value() const {
  if (!set_.is_bounded()) {
    throw UnsupportedError("external regret needs a bounded set");
  }
  const Vector comparator = LinearMinimizer(set_, gradient_sum_);
  return played_ - gradient_sum_.dot(comparator);
}

DynamicRegretAccumulator::DynamicRegretAccumulator(const GameOracle& game)
    : game_(&game),
      exact_(game.has_losses() && game.HasAllBestResponses()),
      sums_(game.num_players(), 0.0),
      available_(game.num_players(), true) {
  if (!exact_) {
    for (int i = 0; i < game.num_players(); ++i) {
      available_[i] = game.player_set(i).is_bounded();
    }
  }
}

void DynamicRegretAccumulator::Add(const Vector& profile,
                                   const Vector& gradient) {
  for (int i = 0; i < game_->num_players(); ++i) {
    if (!available_[i]) continue;
    if (exact_) {
      sums_[i] +=
          game_->Loss(i, profile) - game_->BestRespond(i, profile).value;
    } else {
      const int at = game_->offset(i);
      const int n = game_->player_dims()[i];
      sums_[i] += LinearizedGap(game_->player_set(i), profile.segment(at, n),
                                gradient.segment(at, n));
    }
  }
}

std::vector<std::optional<double>> DynamicRegretAccumulator::values() const {
  std::vector<std::optional<double>> out(sums_.size());
  for (size_t i = 0; i < sums_.size(); ++i) {
    if (available_[i]) out[i] = sums_[i];
  }
  return out;
}

DynamicRegretResult DynamicRegret(std::span<const Vector> profiles,
                                  const GameOracle& game) {
  DynamicRegretAccumulator acc(game);
  for (const Vector& p : profiles) acc.Add(p, game.Gradient(p));
  return DynamicRegretResult{acc.values(), acc.exact()};
}

PotentialWitness ComputePotential(const FeasibleSet& joint_set,
                                  const PotentialInputs& in) {
  if (in.t < 2) throw InvalidArgumentError("potential is defined for t >= 2");
  if (!(in.step > 0.0)) throw InvalidArgumentError("step must be positive");
  const double eta = in.step;
  const double t = in.t;

  PotentialWitness w;
  w.normal = (in.prev_iterate - eta * in.grad_prev_half +
              (in.anchor - in.prev_iterate) / t - in.iterate) /
             eta;
  const Vector residual = eta * in.grad_iterate + eta * w.normal;
  const Vector drift = eta * in.grad_iterate - eta * in.grad_prev_half;
  w.residual_sq = residual.squaredNorm();
  w.drift_sq = drift.squaredNorm();
  w.inner = residual.dot(in.iterate - in.anchor);
  w.value = t * (t + 1.0) / 2.0 * (w.residual_sq + w.drift_sq) + t * w.inner;

  const Vector back = Project(joint_set, in.iterate + w.normal);
  const double scale = std::max(1.0, in.iterate.lpNorm<Eigen::Infinity>());
  w.in_normal_cone = (back - in.iterate).lpNorm<Eigen::Infinity>() <=
                     kBoundaryTolerance * scale;
  return w;
}

double SecondOrderVariation(std::span<const Vector> gradients) {
  if (gradients.size() < 2) {
    throw InvalidArgumentError("gradient variation needs at least 2 rounds");
  }
  double sum = 0.0;
  for (size_t t = 1; t < gradients.size(); ++t) {
    if (gradients[t].size() != gradients[t - 1].size()) {
      throw InvalidArgumentError("gradient dimensions differ across rounds");
    }
    sum += (gradients[t] - gradients[t - 1]).squaredNorm();
  }
  return sum;
}

std::string CsvHeader(int num_players) {
  std::string header = "t,r_tan,gap,tgap_exact,potential";
  for (const char* prefix : {"eta_", "S_", "extreg_", "dynreg_"}) {
    for (int i = 1; i <= num_players; ++i) {
      header += ",";
      header += prefix;
      header += std::to_string(i);
    }
  }
  header += ",dist_half,dist_anchor";
  return header;
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

void PutOptional(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << FormatDouble(*v);
}

template <class T>
void PutColumns(std::ostream& out, const std::vector<T>& values,
                int num_players) {
  for (int i = 0; i < num_players; ++i) {
    if (static_cast<size_t>(i) < values.size()) {
      PutOptional(out, std::optional<double>(values[i]));
    } else {
      out << ',';
    }
  }
}

}  // namespace

void WriteCsv(std::ostream& out, std::span<const RunRecord> rows,
              int num_players) {
  out << CsvHeader(num_players) << '\n';
  for (const RunRecord& row : rows) {
    out << row.t << ',' << FormatDouble(row.r_tan);
    PutOptional(out, row.gap);
    PutOptional(out, row.tgap_exact);
    PutOptional(out, row.potential);
    PutColumns(out, row.eta, num_players);
    PutColumns(out, row.variation, num_players);
    PutColumns(out, row.ext_regret, num_players);
    PutColumns(out, row.dyn_regret, num_players);
    out << ',' << FormatDouble(row.dist_half) << ','
        << FormatDouble(row.dist_anchor) << '\n';
  }
}

std::optional<double> RecordColumn(const RunRecord& row,
                                   const std::string& column) {
  if (column == "t") return row.t;
  if (column == "r_tan") return row.r_tan;
  if (column == "gap") return row.gap;
  if (column == "tgap_exact") return row.tgap_exact;
  if (column == "potential") return row.potential;
  if (column == "dist_half") return row.dist_half;
  if (column == "dist_anchor") return row.dist_anchor;
  const auto indexed = [&](const std::string& prefix,
                           auto get) -> std::optional<double> {
    const int index = std::stoi(column.substr(prefix.size())) - 1;
    return get(index);
  };
  const auto starts = [&](const char* prefix) {
    return column.rfind(prefix, 0) == 0;
  };
  const auto at = [](const auto& values, int i) -> std::optional<double> {
    if (i < 0 || static_cast<size_t>(i) >= values.size()) return std::nullopt;
    return values[i];
  };
  if (starts("eta_")) {
    return indexed("eta_", [&](int i) { return at(row.eta, i); });
  }
  if (starts("S_")) {
    return indexed("S_", [&](int i) { return at(row.variation, i); });
  }
  if (starts("extreg_")) {
    return indexed("extreg_", [&](int i) -> std::optional<double> {
      if (i < 0 || static_cast<size_t>(i) >= row.ext_regret.size()) return {};
      return row.ext_regret[i];
    });
  }
  if (starts("dynreg_")) {
    return indexed("dynreg_", [&](int i) -> std::optional<double> {
      if (i < 0 || static_cast<size_t>(i) >= row.dyn_regret.size()) return {};
      return row.dyn_regret[i];
    });
  }
  throw InvalidArgumentError("unknown column '" + column + "'");
}

}  // namespace aog
