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

#include "aog/harness.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

#include "aog/errors.h"

namespace aog {
namespace {

template <class T>
std::vector<T> Broadcast(const std::vector<T>& values, int n,
                         const std::string& field) {
  if (values.size() == 1) return std::vector<T>(n, values[0]);
  if (static_cast<int>(values.size()) != n) {
    throw ConfigError(field, "expected 1 or " + std::to_string(n) +
                                 " entries, got " +
                                 std::to_string(values.size()));
  }
  return values;
}

struct Players {
  std::vector<Learner> learners;
  std::vector<int> offsets;
  std::vector<int> dims;
  int dim = 0;

  Vector Propose() {
    Vector out(dim);
    for (size_t i = 0; i < learners.size(); ++i) {
      out.segment(offsets[i], dims[i]) = learners[i].Propose();
    }
    return out;
  }
  Vector Iterates() const {
    Vector out(dim);
    for (size_t i = 0; i < learners.size(); ++i) {
      out.segment(offsets[i], dims[i]) = learners[i].iterate();
    }
    return out;
  }
  void Update(const Vector& gradient) {
    for (size_t i = 0; i < learners.size(); ++i) {
      learners[i].Update(gradient.segment(offsets[i], dims[i]));
    }
  }
};

}  // namespace

bool IsRecordedRound(int t, int horizon, int stride) {
  return t == horizon || (t - 1) % stride == 0;
}

SelfPlayTrace RunSelfPlay(const ExperimentConfig& config,
                          const SelfPlayOptions& options) {
  if (config.mode != "selfplay") {
    throw ConfigError("mode", "expected a selfplay config");
  }
  const GameOracle game = MakeGame(config.game, config.seed);
  return RunSelfPlay(config, game, options);
}

SelfPlayTrace RunSelfPlay(const ExperimentConfig& config,
                          const GameOracle& game,
                          const SelfPlayOptions& options) {
  const int n = game.num_players();
  if (config.T < 2) throw ConfigError("T", "must be >= 2");
  if (config.stride < 1) throw ConfigError("stride", "must be >= 1");
  const std::vector<Algorithm> algos =
      Broadcast(config.algorithms, n, "algorithms");
  std::vector<std::optional<double>> steps(n);
  if (!config.step_sizes.empty()) {
    steps = Broadcast(config.step_sizes, n, "step_sizes");
  }
  const bool two_phase = IsTwoPhase(algos[0]);
  for (Algorithm a : algos) {
    if (IsTwoPhase(a) != two_phase) {
      throw ConfigError("algorithms",
                        "eg/eag cannot be mixed with single-phase learners");
    }
  }

  SelfPlayTrace trace;
  trace.num_players = n;
  trace.lipschitz = config.lipschitz.value_or(game.lipschitz());
  trace.diameter = config.diameter ? config.diameter : game.diameter();
  for (int i = 0; i < n; ++i) {
    if (algos[i] == Algorithm::kAogAdaptive && !trace.diameter) {
      throw ConfigError("diameter",
                        "aog_adaptive on an unbounded game needs a diameter");
    }
  }

  Vector start = config.initial_point.value_or(game.default_start());
  if (start.size() != game.dim()) {
    throw ConfigError("initial_point", "expected " +
                                           std::to_string(game.dim()) +
                                           " coordinates");
  }
  if (!start.allFinite() || !Contains(game.joint_set(), start)) {
    throw ConfigError("initial_point", "not in the feasible set");
  }
  trace.start = start;

  Players players;
  players.dim = game.dim();
  for (int i = 0; i < n; ++i) {
    LearnerConfig lc;
    lc.lipschitz = trace.lipschitz;
    lc.diameter = trace.diameter.value_or(1.0);
    lc.step_size = steps[i];
    players.offsets.push_back(game.offset(i));
    players.dims.push_back(game.player_dims()[i]);
    try {
      players.learners.emplace_back(
          algos[i], game.player_set(i),
          start.segment(game.offset(i), game.player_dims()[i]), lc);
    } catch (const InvalidArgumentError& e) {
      throw ConfigError(i < static_cast<int>(config.step_sizes.size())
                            ? "step_sizes"
                            : "algorithms",
                        e.what());
    }
  }

  bool all_aog = true;
  for (int i = 0; i < n; ++i) {
    all_aog = all_aog && algos[i] == Algorithm::kAog &&
              players.learners[i].step_size() ==
                  players.learners[0].step_size();
  }
  if (all_aog) trace.common_step = players.learners[0].step_size();

  MetricSelection wanted;
  if (config.metrics) wanted = *config.metrics;
  const bool bounded = game.joint_set().is_bounded();

  std::vector<ExternalRegretAccumulator> ext;
  for (int i = 0; i < n; ++i) ext.emplace_back(game.player_set(i));
  DynamicRegretAccumulator dyn(game);
  trace.dyn_regret_exact = dyn.exact();

  auto accumulate = [&](const Vector& profile, const Vector& gradient) {
    if (wanted.ext_regret) {
      for (int i = 0; i < n; ++i) {
        ext[i].Add(profile.segment(players.offsets[i], players.dims[i]),
                   gradient.segment(players.offsets[i], players.dims[i]));
      }
    }
    if (wanted.dyn_regret) dyn.Add(profile, gradient);
  };

  Vector prev_base;
  Vector prev_half;
  Vector prev_grad_half;
  const bool need_potential = trace.common_step.has_value();

  for (int t = 1; t <= config.T; ++t) {
    const bool record = IsRecordedRound(t, config.T, config.stride);
    Vector base;
    Vector grad_base;
    Vector half;
    Vector grad_half;
    std::vector<double> etas(n);

    if (two_phase) {
      base = players.Propose();
      grad_base = game.Gradient(base);
      for (int i = 0; i < n; ++i) etas[i] = players.learners[i].step_size();
      accumulate(base, grad_base);
      players.Update(grad_base);
      half = players.Propose();
      grad_half = game.Gradient(half);
      accumulate(half, grad_half);
      players.Update(grad_half);
    } else {
      base = players.Iterates();
      half = players.Propose();
      for (int i = 0; i < n; ++i) etas[i] = players.learners[i].step_size();
      grad_half = game.Gradient(half);
      if (options.keep_iterates || (record && need_potential)) {
        grad_base = game.Gradient(base);
      }
      accumulate(half, grad_half);
      players.Update(grad_half);
    }

    if (record) {
      RunRecord row;
      row.t = t;
      const EquilibriumMeasures m = MeasureEquilibrium(game, half, grad_half);
      row.r_tan = m.r_tan;
      if (wanted.gap && bounded) row.gap = m.gap;
      if (wanted.tgap) row.tgap_exact = m.tgap_exact;
      row.eta = etas;
      for (int i = 0; i < n; ++i) {
        row.variation.push_back(players.learners[i].variation());
        std::optional<double> e;
        if (wanted.ext_regret && game.player_set(i).is_bounded()) {
          e = ext[i].value();
        }
        row.ext_regret.push_back(e);
      }
      if (wanted.dyn_regret) {
        row.dyn_regret = dyn.values();
      } else {
        row.dyn_regret.assign(n, std::nullopt);
      }
      row.dist_half = (half - base).norm();
      row.dist_anchor = (start - base).norm();
      if (game.has_losses()) {
        for (int i = 0; i < n; ++i) row.losses.push_back(game.Loss(i, half));
      }
      if (need_potential && t >= 2) {
        PotentialInputs in;
        in.t = t;
        in.step = *trace.common_step;
        in.anchor = start;
        in.prev_iterate = prev_base;
        in.prev_half = prev_half;
        in.iterate = base;
        in.grad_prev_half = prev_grad_half;
        in.grad_iterate = grad_base;
        const PotentialWitness w = ComputePotential(game.joint_set(), in);
        if (wanted.potential) row.potential = w.value;
        row.residual_sq = w.residual_sq;
        row.drift_sq = w.drift_sq;
        row.residual_proxy = std::sqrt(w.residual_sq) / in.step;
        row.gradient_drift = std::sqrt(w.drift_sq) / in.step;
        row.normal_cone_ok = w.in_normal_cone;
      }
      trace.rows.push_back(std::move(row));
    }
    if (options.keep_iterates) {
      trace.iterates.push_back({base, half, grad_base, grad_half});
    }
    prev_base = std::move(base);
    prev_half = std::move(half);
    prev_grad_half = std::move(grad_half);
  }
  return trace;
}

Adversary ZeroAdversary(int dim) {
  return [dim](int, const Vector&) { return Vector::Zero(dim).eval(); };
}

Adversary AppendixDAdversary() {
  return [](int t, const Vector&) {
    Vector g(1);
    g[0] = (t % 2 == 1) ? 1.0 : 0.0;
    return g;
  };
}

Adversary RandomBoundedAdversary(int dim, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [dim, rng](int, const Vector&) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector g(dim);
    for (Eigen::Index i = 0; i < dim; ++i) g[i] = unif(*rng);
    return g;
  };
}

AdversarialTrace RunAdversarial(const AdversarialSetup& setup) {
  if (!setup.adversary) throw InvalidArgumentError("adversary is required");
  if (setup.T < 1) throw InvalidArgumentError("T must be positive");
  if (setup.stride < 1) throw InvalidArgumentError("stride must be positive");
  const Vector start =
      setup.start.value_or(Project(setup.set, Vector::Zero(setup.set.dim())));
  Learner learner(setup.algorithm, setup.set, start, setup.learner);
  ExternalRegretAccumulator regret(setup.set);
  AdversarialTrace trace;
  for (int t = 1; t <= setup.T; ++t) {
    const Vector x = learner.Propose();
    const double eta = learner.step_size();
    const Vector g = setup.adversary(t, x);
    if (g.size() != x.size()) {
      throw AdversaryError("adversary gradient has the wrong dimension");
    }
    if (!g.allFinite()) {
      throw AdversaryError("adversary returned a non-finite gradient at t=" +
                           std::to_string(t));
    }
    regret.Add(x, g);
    if (setup.keep_actions) trace.actions.push_back(x);
    learner.Update(g);
    if (IsRecordedRound(t, setup.T, setup.stride)) {
      trace.rows.push_back({t, regret.value(), eta, learner.variation()});
    }
  }
  trace.regret = regret.value();
  trace.linear_loss = regret.linear_loss();
  return trace;
}

AdversarialTrace RunAdversarial(const ExperimentConfig& config) {
  if (config.mode != "adversarial") {
    throw ConfigError("mode", "expected an adversarial config");
  }
  if (config.algorithms.size() != 1) {
    throw ConfigError("algorithms", "adversarial runs take one algorithm");
  }
  if (config.step_sizes.size() > 1) {
    throw ConfigError("step_sizes", "adversarial runs take one step size");
  }
  const AdversarySpec& adv = config.adversary;
  AdversarialSetup setup;
  setup.algorithm = config.algorithms[0];
  setup.set = FeasibleSet::MakeCube(adv.dim, -adv.box_half_width,
                                    adv.box_half_width);
  setup.learner.lipschitz = config.lipschitz.value_or(1.0);
  setup.learner.diameter =
      config.diameter.value_or(*Diameter(setup.set));
  if (!config.step_sizes.empty()) {
    setup.learner.step_size = config.step_sizes[0];
  }
  if (config.initial_point) {
    if (config.initial_point->size() != adv.dim ||
        !Contains(setup.set, *config.initial_point)) {
      throw ConfigError("initial_point", "not in the feasible set");
    }
    setup.start = config.initial_point;
  }
  if (adv.kind == "zero") {
    setup.adversary = ZeroAdversary(adv.dim);
  } else if (adv.kind == "appendix_d") {
    setup.adversary = AppendixDAdversary();
  } else {
    setup.adversary = RandomBoundedAdversary(adv.dim, config.seed);
  }
  setup.T = config.T;
  setup.stride = config.stride;
  try {
    return RunAdversarial(setup);
  } catch (const InvalidArgumentError& e) {
    throw ConfigError("algorithms", e.what());
  }
}

void WriteAdversarialCsv(std::ostream& out,
                         std::span<const AdversarialRow> rows) {
  out << "t,regret,eta,S\n";
  for (const AdversarialRow& r : rows) {
    out << r.t << ',' << FormatDouble(r.regret) << ',' << FormatDouble(r.eta)
        << ',' << FormatDouble(r.variation) << '\n';
  }
}

SlopeFit FitLogLogSlope(std::span<const double> t,
                        std::span<const double> values, double t_min,
                        double t_max) {
  if (t.size() != values.size()) {
    throw InvalidArgumentError("t and values differ in length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i]) || !(t[i] > 0.0)) {
      continue;
    }
    xs.push_back(std::log(t[i]));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 10) {
    throw InvalidArgumentError("slope fit needs at least 10 points, got " +
                               std::to_string(xs.size()));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgumentError("slope fit needs distinct t");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.t_min = std::exp(xs.front());
  fit.t_max = std::exp(xs.back());
  fit.points = static_cast<int>(xs.size());
  return fit;
}

SlopeFit FitLogLogSlope(std::span<const RunRecord> rows,
                        const std::string& column, double t_min,
                        double t_max) {
  std::vector<double> t;
  std::vector<double> v;
  for (const RunRecord& row : rows) {
    const std::optional<double> value = RecordColumn(row, column);
    if (!value) continue;
    t.push_back(row.t);
    v.push_back(*value);
  }
  return FitLogLogSlope(t, v, t_min, t_max);
}

void EmitCsv(const SelfPlayTrace& trace, const std::string& path) {
  if (path.empty() || path == "-") {
    WriteCsv(std::cout, trace.rows, trace.num_players);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write '" + path + "'");
  WriteCsv(out, trace.rows, trace.num_players);
}

}  // namespace aog
