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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "aog/errors.h"
#include "aog/games.h"
#include "aog/harness.h"
#include "aog/learners.h"

namespace aog {
namespace {

Vector V(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

std::vector<GameOracle> BoundedGames() {
  std::vector<GameOracle> games;
  games.push_back(MakeBilinearSaddle(1.0, 1.0, 1, 1));
  games.push_back(MakeBilinearSaddle(1.5, 2.0, 3, 3));
  games.push_back(MakeAppendixEInstance(4, 3.0));
  RandomLinearOptions options;
  options.player_dims = {2, 2, 1};
  options.box_half_width = 1.0;
  options.epsilon = 0.0;
  games.push_back(MakeRandomLinearMonotone(options));
  return games;
}

TEST(MeasureEquilibriumTest, NashOfBilinearIsZero) {
  const GameOracle game = MakeBilinearSaddle(1.0, 1.0, 1, 1);
  const EquilibriumMeasures m = MeasureEquilibrium(game, Vector::Zero(2));
  EXPECT_EQ(m.r_tan, 0.0);
  EXPECT_EQ(*m.gap, 0.0);
  EXPECT_EQ(*m.tgap_exact, 0.0);
}

TEST(MeasureEquilibriumTest, CornerGapMatchesEnumeration) {
  const GameOracle game = MakeBilinearSaddle(1.0, 1.0, 1, 1);
  const Vector z = V({1.0, 1.0});
  const Vector g = game.Gradient(z);
  double best = -HUGE_VAL;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) best = std::max(best, g.dot(z - V({a, b})));
  }
  // V(1, 1) = (1, -1) is orthogonal to z; the minimizing corner is (-1, 1).
  EXPECT_EQ(best, 2.0);
  EXPECT_DOUBLE_EQ(*MeasureEquilibrium(game, z).gap, best);
}

TEST(MeasureEquilibriumTest, OrderingChainOnBoundedGames) {
  std::mt19937_64 rng(3);
  for (const GameOracle& game : BoundedGames()) {
    const double d = *game.diameter();
    for (int i = 0; i < 300; ++i) {
      Vector z = SamplePoint(game.joint_set(), rng);
      // Push some samples onto the boundary.
      if (i % 3 == 0) z = Project(game.joint_set(), 3.0 * z);
      const EquilibriumMeasures m = MeasureEquilibrium(game, z);
      ASSERT_TRUE(m.gap.has_value());
      EXPECT_GE(m.r_tan, 0.0);
      EXPECT_GE(*m.gap, 0.0);
      EXPECT_LE(*m.gap, d * m.r_tan + 1e-9) << game.name();
      EXPECT_NEAR(*m.tgap_upper, *m.gap, 1e-9 * std::max(1.0, *m.gap));
      if (m.tgap_exact) {
        EXPECT_LE(*m.tgap_exact, *m.gap + 1e-9) << game.name();
        EXPECT_GE(*m.tgap_exact, -1e-12);
      }
    }
  }
}

TEST(MeasureEquilibriumTest, UnboundedReportsOnlyResidual) {
  const GameOracle game = MakeRandomLinearMonotone(RandomLinearOptions{});
  const EquilibriumMeasures m = MeasureEquilibrium(game, V({1.0, -1.0}));
  EXPECT_FALSE(m.gap.has_value());
  EXPECT_GT(m.r_tan, 0.0);
}

TEST(ExternalRegretTest, ConstantGradientAtMinimizerIsZero) {
  const FeasibleSet box = FeasibleSet::MakeCube(2, -1.0, 1.0);
  std::vector<PlayedRound> trace(
      5, PlayedRound{V({-1.0, 1.0}), V({2.0, -1.0})});
  EXPECT_EQ(ExternalRegret(trace, box), 0.0);
}

TEST(ExternalRegretTest, ThreeRoundExample) {
  const FeasibleSet box = FeasibleSet::MakeCube(1, -1.0, 1.0);
  const std::vector<PlayedRound> trace = {
      {V({0.0}), V({1.0})}, {V({0.0}), V({-1.0})}, {V({0.0}), V({1.0})}};
  EXPECT_EQ(ExternalRegret(trace, box), 1.0);
}

TEST(ExternalRegretTest, BallComparator) {
  const FeasibleSet ball = FeasibleSet::MakeBall(V({1.0, 0.0}), 2.0);
  const std::vector<PlayedRound> trace = {{V({1.0, 0.0}), V({3.0, 4.0})}};
  EXPECT_NEAR(ExternalRegret(trace, ball), 10.0, 1e-14);
  const std::vector<PlayedRound> cancel = {{V({1.0, 1.0}), V({1.0, 0.0})},
                                           {V({1.0, 0.0}), V({-1.0, 0.0})}};
  EXPECT_NEAR(ExternalRegret(cancel, ball), 0.0, 1e-15);
}

TEST(ExternalRegretTest, StreamingMatchesBatchAndSampling) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  const FeasibleSet box = FeasibleSet::MakeBox(V({-1.0, 0.0}), V({2.0, 0.5}));
  std::vector<PlayedRound> trace;
  ExternalRegretAccumulator acc(box);
  for (int t = 0; t < 50; ++t) {
    PlayedRound r{SamplePoint(box, rng), V({normal(rng), normal(rng)})};
    acc.Add(r.action, r.gradient);
    trace.push_back(r);
  }
  const double batch = ExternalRegret(trace, box);
  EXPECT_NEAR(acc.value(), batch, 1e-12);
  for (int k = 0; k < 2000; ++k) {
    const Vector x = SamplePoint(box, rng);
    double regret = 0.0;
    for (const PlayedRound& r : trace) regret += r.gradient.dot(r.action - x);
    EXPECT_LE(regret, batch + 1e-12);
  }
}

TEST(ExternalRegretTest, UnboundedThrows) {
  const std::vector<PlayedRound> trace = {{V({0.0}), V({1.0})}};
  EXPECT_THROW(ExternalRegret(trace, FeasibleSet::MakeUnconstrained(1)),
               UnsupportedError);
}

TEST(DynamicRegretTest, NashPlayIsZero) {
  const GameOracle game = MakeBilinearSaddle(1.0, 1.0, 1, 1);
  const std::vector<Vector> profiles(10, Vector::Zero(2));
  const DynamicRegretResult r = DynamicRegret(profiles, game);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(*r.per_player[0], 0.0);
  EXPECT_EQ(*r.per_player[1], 0.0);
}

TEST(DynamicRegretTest, SingleRoundExample) {
  const GameOracle game = MakeBilinearSaddle(1.0, 1.0, 1, 1);
  const std::vector<Vector> profiles = {V({1.0, 1.0})};
  const DynamicRegretResult r = DynamicRegret(profiles, game);
  EXPECT_DOUBLE_EQ(*r.per_player[0], 2.0);
  // Player 2: -1 - min_y(-y) = 0.
  EXPECT_DOUBLE_EQ(*r.per_player[1], 0.0);
}

TEST(DynamicRegretTest, UpperBoundModeDominatesExactTerms) {
  const GameOracle game = MakeAppendixEInstance(3, 2.0);
  DynamicRegretAccumulator acc(game);
  EXPECT_FALSE(acc.exact());
  std::mt19937_64 rng(7);
  double player2_exact = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vector z = SamplePoint(game.joint_set(), rng);
    acc.Add(z, game.Gradient(z));
    player2_exact += game.Loss(1, z) - game.BestRespond(1, z).value;
  }
  const auto values = acc.values();
  EXPECT_GE(*values[0], 0.0);
  // Player 2's loss is linear in its action, so its gap term is exact.
  EXPECT_NEAR(*values[1], player2_exact, 1e-9 * std::abs(player2_exact));
}

TEST(SecondOrderVariationTest, Examples) {
  const std::vector<Vector> constant(5, V({1.0, 2.0}));
  EXPECT_EQ(SecondOrderVariation(constant), 0.0);
  const std::vector<Vector> two = {V({1.0, 0.0}), V({0.0, 1.0})};
  EXPECT_EQ(SecondOrderVariation(two), 2.0);
  const std::vector<Vector> mixed = {V({0.0}), V({3.0, 4.0})};
  EXPECT_THROW(SecondOrderVariation(mixed), InvalidArgumentError);
  const std::vector<Vector> one = {V({0.0})};
  EXPECT_THROW(SecondOrderVariation(one), InvalidArgumentError);
}

TEST(SecondOrderVariationTest, MatchesLearnerAccumulator) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  Learner learner(Algorithm::kAogAdaptive, FeasibleSet::MakeCube(2, -1, 1),
                  Vector::Zero(2));
  std::vector<Vector> grads;
  for (int t = 1; t <= 300; ++t) {
    learner.Propose();
    const Vector g = V({normal(rng), normal(rng)});
    learner.Update(g);
    grads.push_back(g);
    if (t >= 2) EXPECT_EQ(learner.variation(), SecondOrderVariation(grads));
  }
}

TEST(PotentialTest, StationaryRunIsZero) {
  const FeasibleSet set = FeasibleSet::MakeCube(2, -1.0, 1.0);
  PotentialInputs in;
  in.t = 5;
  in.step = 0.3;
  in.anchor = Vector::Zero(2);
  in.prev_iterate = in.prev_half = in.iterate = Vector::Zero(2);
  in.grad_prev_half = in.grad_iterate = Vector::Zero(2);
  const PotentialWitness w = ComputePotential(set, in);
  EXPECT_EQ(w.value, 0.0);
  EXPECT_EQ(w.normal, Vector::Zero(2));
  EXPECT_TRUE(w.in_normal_cone);
}

TEST(PotentialTest, RejectsEarlyRoundsAndBadSteps) {
  const FeasibleSet set = FeasibleSet::MakeCube(1, -1.0, 1.0);
  PotentialInputs in;
  in.anchor = in.prev_iterate = in.prev_half = in.iterate = V({0.0});
  in.grad_prev_half = in.grad_iterate = V({0.0});
  in.t = 1;
  in.step = 0.1;
  EXPECT_THROW(ComputePotential(set, in), InvalidArgumentError);
  in.t = 2;
  in.step = 0.0;
  EXPECT_THROW(ComputePotential(set, in), InvalidArgumentError);
}

TEST(PotentialTest, ThirdRoundMatchesIndependentEvaluation) {
  ExperimentConfig config;
  config.game.id = "bilinear";
  config.T = 6;
  const GameOracle game = MakeGame(config.game, config.seed);
  const SelfPlayTrace trace = RunSelfPlay(config, game, {true});
  ASSERT_TRUE(trace.common_step.has_value());
  const double eta = *trace.common_step;
  const IterateSnapshot& r2 = trace.iterates[1];
  const IterateSnapshot& r3 = trace.iterates[2];
  const Vector x1 = trace.start;
  // c_3 from the update that produced x_3.
  const Vector c3 = (r2.base - eta * r2.grad_half + (x1 - r2.base) / 3.0 -
                     r3.base) / eta;
  const Vector a = eta * game.Gradient(r3.base) + eta * c3;
  const Vector b = eta * game.Gradient(r3.base) - eta * r2.grad_half;
  const double expected = 6.0 * (a.squaredNorm() + b.squaredNorm()) +
                          3.0 * a.dot(r3.base - x1);
  ASSERT_EQ(trace.rows[2].t, 3);
  EXPECT_NEAR(*trace.rows[2].potential, expected, 1e-12);
  EXPECT_TRUE(*trace.rows[2].normal_cone_ok);
  EXPECT_EQ(Project(game.joint_set(), r3.base + c3), r3.base);
}

TEST(CsvTest, HeaderMatchesSchema) {
  EXPECT_EQ(CsvHeader(2),
            "t,r_tan,gap,tgap_exact,potential,eta_1,eta_2,S_1,S_2,extreg_1,"
            "extreg_2,dynreg_1,dynreg_2,dist_half,dist_anchor");
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal(0.0, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = normal(rng);
    EXPECT_EQ(std::stod(FormatDouble(x)), x);
  }
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(3.0), "3");
}

TEST(CsvTest, AbsentValuesAreEmptyFields) {
  RunRecord row;
  row.t = 7;
  row.r_tan = 0.25;
  row.eta = {0.5};
  row.variation = {1.0};
  row.ext_regret = {std::nullopt};
  row.dyn_regret = {2.0};
  row.dist_half = 0.0;
  row.dist_anchor = 1.5;
  std::ostringstream out;
  const std::vector<RunRecord> rows = {row};
  WriteCsv(out, rows, 1);
  EXPECT_EQ(out.str(), CsvHeader(1) + "\n7,0.25,,,,0.5,1,,2,0,1.5\n");
  EXPECT_EQ(*RecordColumn(row, "dynreg_1"), 2.0);
  EXPECT_FALSE(RecordColumn(row, "extreg_1").has_value());
  EXPECT_FALSE(RecordColumn(row, "gap").has_value());
}

}  // namespace
}  // namespace aog
