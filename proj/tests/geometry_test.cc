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

#include "aog/geometry.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "aog/errors.h"

namespace aog {
namespace {

Vector V(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

FeasibleSet Square() { return FeasibleSet::MakeCube(2, -1.0, 1.0); }

// min over c in {-10..10} step 1e-3 restricted to the normal cone of the box
// at `point` (coordinate sign constraints), of |grad + c|.
double GridResidual(const FeasibleSet::Box& box, const Vector& point,
                    const Vector& grad) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    const bool at_lower = point[j] == box.lower[j];
    const bool at_upper = point[j] == box.upper[j];
    double best = std::numeric_limits<double>::infinity();
    for (int k = -10000; k <= 10000; ++k) {
      const double c = k * 1e-3;
      bool allowed = c == 0.0;
      if (at_lower && c <= 0.0) allowed = true;
      if (at_upper && c >= 0.0) allowed = true;
      if (!allowed) continue;
      best = std::min(best, std::abs(grad[j] + c));
    }
    total += best * best;
  }
  return std::sqrt(total);
}

TEST(ProjectTest, InteriorPointIsFixed) {
  EXPECT_EQ(Project(Square(), V({0.5, 0.2})), V({0.5, 0.2}));
}

TEST(ProjectTest, BoxClampsComponentwise) {
  EXPECT_EQ(Project(Square(), V({2.0, -3.0})), V({1.0, -1.0}));
}

TEST(ProjectTest, BallScalesOntoSphere) {
  const FeasibleSet ball = FeasibleSet::MakeBall(Vector::Zero(2), 1.0);
  const Vector p = Project(ball, V({3.0, 4.0}));
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p[0] * 4.0 - p[1] * 3.0, 0.0, 1e-15);
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
}

TEST(ProjectTest, UnconstrainedIsIdentity) {
  const Vector p = V({1e6, -3.0});
  EXPECT_EQ(Project(FeasibleSet::MakeUnconstrained(2), p), p);
}

TEST(ProjectTest, ProductProjectsEachFactor) {
  const FeasibleSet set = FeasibleSet::MakeProduct(
      {FeasibleSet::MakeCube(1, 0.0, 1.0),
       FeasibleSet::MakeBall(V({0.0, 0.0}), 2.0)});
  const Vector p = Project(set, V({-1.0, 0.0, 4.0}));
  EXPECT_EQ(p[0], 0.0);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
  EXPECT_NEAR(p[2], 2.0, 1e-15);
}

TEST(ProjectTest, DimensionMismatchThrows) {
  EXPECT_THROW(Project(Square(), V({1.0})), InvalidArgumentError);
}

TEST(FeasibleSetTest, InvalidConstructionThrows) {
  EXPECT_THROW(FeasibleSet::MakeBox(V({1.0}), V({0.0})), InvalidArgumentError);
  EXPECT_THROW(FeasibleSet::MakeBall(V({0.0}), 0.0), InvalidArgumentError);
  EXPECT_THROW(FeasibleSet::MakeBox(V({0.0}), V({HUGE_VAL})),
               InvalidArgumentError);
}

TEST(ProjectionPropertyTest, IdempotentAndNonExpansive) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 3.0);
  const std::vector<FeasibleSet> sets = {
      Square(),
      FeasibleSet::MakeBox(V({-1.0, 0.0, 2.0}), V({1.0, 0.0, 5.0})),
      FeasibleSet::MakeBall(V({1.0, -1.0}), 0.5),
      FeasibleSet::MakeProduct({FeasibleSet::MakeCube(2, -1.0, 1.0),
                                FeasibleSet::MakeBall(V({0.0}), 1.0)}),
  };
  for (const FeasibleSet& set : sets) {
    for (int i = 0; i < 1000; ++i) {
      Vector a(set.dim());
      Vector b(set.dim());
      for (int j = 0; j < set.dim(); ++j) {
        a[j] = normal(rng);
        b[j] = normal(rng);
      }
      const Vector pa = Project(set, a);
      const Vector pb = Project(set, b);
      EXPECT_EQ(Project(set, pa), pa);
      EXPECT_LE((pa - pb).norm(), (a - b).norm() + 1e-12);
      EXPECT_TRUE(Contains(set, pa));
    }
  }
}

TEST(ProjectionPropertyTest, NormalConeVectorsProjectBack) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 3.0);
  const FeasibleSet box = Square();
  const FeasibleSet ball = FeasibleSet::MakeBall(V({0.5, 0.0}), 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Vector p = V({normal(rng), normal(rng)});
    const Vector x = Project(box, p);
    Vector v = Vector::Zero(2);
    for (int j = 0; j < 2; ++j) {
      if (x[j] == 1.0) v[j] = unit(rng);
      if (x[j] == -1.0) v[j] = -unit(rng);
    }
    EXPECT_LT((Project(box, x + v) - x).norm(), 1e-10);

    const Vector y = Project(ball, p);
    const Vector n = y - V({0.5, 0.0});
    const Vector w = n.norm() >= 1.0 - 1e-12 ? (unit(rng) * n).eval()
                                             : Vector::Zero(2).eval();
    EXPECT_LT((Project(ball, y + w) - y).norm(), 1e-10);
  }
}

TEST(TangentResidualTest, UnconstrainedIsGradientNorm) {
  EXPECT_DOUBLE_EQ(TangentResidual(FeasibleSet::MakeUnconstrained(2),
                                   V({1.0, 1.0}), V({3.0, 4.0})),
                   5.0);
}

TEST(TangentResidualTest, LowerBoundPushingOutward) {
  const FeasibleSet box = FeasibleSet::MakeCube(1, -1.0, 1.0);
  EXPECT_DOUBLE_EQ(TangentResidual(box, V({-1.0}), V({-2.0})), 2.0);
}

TEST(TangentResidualTest, LowerBoundPushingInwardIsCancelled) {
  const FeasibleSet box = FeasibleSet::MakeCube(1, -1.0, 1.0);
  EXPECT_DOUBLE_EQ(TangentResidual(box, V({-1.0}), V({2.0})), 0.0);
}

TEST(TangentResidualTest, DegenerateCoordinateContributesZero) {
  const FeasibleSet box = FeasibleSet::MakeBox(V({0.0, -1.0}), V({0.0, 1.0}));
  EXPECT_DOUBLE_EQ(TangentResidual(box, V({0.0, 0.0}), V({5.0, 3.0})), 3.0);
}

TEST(TangentResidualTest, BallBoundary) {
  const FeasibleSet ball = FeasibleSet::MakeBall(Vector::Zero(2), 1.0);
  // Gradient pointing inward along the normal is cancelled by the cone.
  EXPECT_NEAR(TangentResidual(ball, V({1.0, 0.0}), V({-2.0, 3.0})), 3.0,
              1e-15);
  // Outward component cannot be cancelled.
  EXPECT_NEAR(TangentResidual(ball, V({1.0, 0.0}), V({2.0, 3.0})),
              std::sqrt(13.0), 1e-15);
  EXPECT_NEAR(TangentResidual(ball, V({0.0, 0.5}), V({2.0, 3.0})),
              std::sqrt(13.0), 1e-15);
}

TEST(TangentResidualTest, BallMatchesSampledCone) {
  const FeasibleSet ball = FeasibleSet::MakeBall(V({1.0, 1.0}), 2.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Vector dir = V({normal(rng), normal(rng)});
    dir.normalize();
    const Vector x = V({1.0, 1.0}) + 2.0 * dir;
    const Vector g = V({normal(rng), normal(rng)});
    // Coarse scan of lambda in [0, 20], then a fine scan around the best.
    double best = g.norm();
    double best_lambda = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      const double r = (g + (k * 1e-3) * dir).norm();
      if (r < best) {
        best = r;
        best_lambda = k * 1e-3;
      }
    }
    for (int k = -10000; k <= 10000; ++k) {
      const double lambda = best_lambda + k * 1e-7;
      if (lambda < 0.0) continue;
      best = std::min(best, (g + lambda * dir).norm());
    }
    EXPECT_NEAR(TangentResidual(ball, x, g), best, 1e-6);
  }
}

TEST(TangentResidualTest, MatchesGridOracleOnBoxes) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  // Gradients on the 1e-3 grid so that the oracle can cancel them exactly.
  std::uniform_int_distribution<int> grad(-5000, 5000);
  for (int dim : {1, 2}) {
    const FeasibleSet set = FeasibleSet::MakeCube(dim, -1.0, 1.0);
    const auto& box = std::get<FeasibleSet::Box>(set.shape());
    for (int i = 0; i < 40; ++i) {
      Vector x(dim);
      Vector g(dim);
      for (int j = 0; j < dim; ++j) {
        const int where = pick(rng);
        x[j] = where == 0 ? -1.0 : where == 1 ? 1.0 : 0.3;
        g[j] = grad(rng) * 1e-3;
      }
      EXPECT_NEAR(TangentResidual(set, x, g), GridResidual(box, x, g), 1e-6);
    }
  }
}

TEST(TangentResidualTest, ProductIsRootSumSquare) {
  const FeasibleSet a = FeasibleSet::MakeCube(1, -1.0, 1.0);
  const FeasibleSet b = FeasibleSet::MakeUnconstrained(1);
  const FeasibleSet prod = FeasibleSet::MakeProduct({a, b});
  EXPECT_DOUBLE_EQ(TangentResidual(prod, V({1.0, 7.0}), V({3.0, 4.0})), 5.0);
  EXPECT_DOUBLE_EQ(TangentResidual(prod, V({1.0, 7.0}), V({-3.0, 4.0})), 4.0);
}

TEST(TangentResidualTest, NearBoundaryPointIsSnapped) {
  const FeasibleSet box = FeasibleSet::MakeCube(1, -1.0, 1.0);
  EXPECT_DOUBLE_EQ(TangentResidual(box, V({1.0 + 1e-12}), V({-2.0})), 0.0);
}

TEST(TangentResidualTest, FarPointThrows) {
  EXPECT_THROW(TangentResidual(Square(), V({1.5, 0.0}), V({1.0, 1.0})),
               DomainError);
}

TEST(LinearizedGapTest, CornerExample) {
  EXPECT_DOUBLE_EQ(LinearizedGap(Square(), V({1.0, 1.0}), V({1.0, 1.0})),
                   4.0);
}

TEST(LinearizedGapTest, ZeroGradientHasZeroGap) {
  EXPECT_EQ(LinearizedGap(Square(), V({0.3, -0.2}), Vector::Zero(2)), 0.0);
  const FeasibleSet ball = FeasibleSet::MakeBall(Vector::Zero(3), 2.0);
  EXPECT_EQ(LinearizedGap(ball, V({0.1, 0.2, 0.3}), Vector::Zero(3)), 0.0);
}

TEST(LinearizedGapTest, IntervalExample) {
  EXPECT_DOUBLE_EQ(LinearizedGap(FeasibleSet::MakeCube(1, -1.0, 1.0),
                                 V({0.0}), V({1.0})),
                   1.0);
}

TEST(LinearizedGapTest, BallUsesOppositeDirection) {
  const FeasibleSet ball = FeasibleSet::MakeBall(V({1.0, 0.0}), 2.0);
  // <g, x> - <g, c - r g/|g|> = <g, x - c> + r |g|.
  EXPECT_NEAR(LinearizedGap(ball, V({1.0, 0.0}), V({3.0, 4.0})), 10.0,
              1e-14);
}

TEST(LinearizedGapTest, UnboundedThrows) {
  EXPECT_THROW(LinearizedGap(FeasibleSet::MakeUnconstrained(1), V({0.0}),
                             V({1.0})),
               UnsupportedError);
}

TEST(LinearizedGapTest, MatchesSampledAndGridMaximum) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int dim : {1, 2}) {
    const FeasibleSet set = FeasibleSet::MakeCube(dim, -1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      Vector x(dim);
      Vector g(dim);
      for (int j = 0; j < dim; ++j) {
        x[j] = unif(rng);
        g[j] = 3.0 * unif(rng);
      }
      const double gap = LinearizedGap(set, x, g);
      double sampled = 0.0;
      for (int k = 0; k < 10000; ++k) {
        sampled = std::max(sampled, g.dot(x - SamplePoint(set, rng)));
      }
      EXPECT_GE(gap, sampled - 1e-12);
      // Uniform grid with 10^4 points including the corners.
      const int per_axis = dim == 1 ? 10000 : 100;
      double grid = 0.0;
      for (int i = 0; i < per_axis; ++i) {
        for (int k = 0; k < (dim == 1 ? 1 : per_axis); ++k) {
          Vector xp(dim);
          xp[0] = -1.0 + 2.0 * i / (per_axis - 1);
          if (dim == 2) xp[1] = -1.0 + 2.0 * k / (per_axis - 1);
          grid = std::max(grid, g.dot(x - xp));
        }
      }
      EXPECT_NEAR(gap, grid, 1e-3 * std::max(1.0, g.norm()));
    }
  }
}

TEST(LinearMinimizerTest, TiesGoToLowestPoint) {
  EXPECT_EQ(LinearMinimizer(Square(), V({0.0, -1.0})), V({-1.0, 1.0}));
  const FeasibleSet ball = FeasibleSet::MakeBall(V({1.0, 1.0}), 2.0);
  EXPECT_EQ(LinearMinimizer(ball, Vector::Zero(2)), V({-1.0, 1.0}));
}

TEST(DiameterTest, Examples) {
  EXPECT_DOUBLE_EQ(*Diameter(Square()), 2.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(*Diameter(FeasibleSet::MakeBall(Vector::Zero(3), 5.0)),
                   10.0);
  EXPECT_NEAR(*Diameter(FeasibleSet::MakeCube(200, -200.0, 200.0)),
              400.0 * std::sqrt(200.0), 1e-9);
  EXPECT_FALSE(Diameter(FeasibleSet::MakeUnconstrained(2)).has_value());
  EXPECT_FALSE(Diameter(FeasibleSet::MakeProduct(
                            {Square(), FeasibleSet::MakeUnconstrained(1)}))
                   .has_value());
  EXPECT_DOUBLE_EQ(
      *Diameter(FeasibleSet::MakeProduct(
          {FeasibleSet::MakeCube(1, 0.0, 3.0),
           FeasibleSet::MakeBall(Vector::Zero(1), 2.0)})),
      5.0);
}

TEST(ContainsTest, RespectsTolerance) {
  EXPECT_TRUE(Contains(Square(), V({1.0 + 1e-12, 0.0})));
  EXPECT_FALSE(Contains(Square(), V({1.0 + 1e-6, 0.0})));
  EXPECT_DOUBLE_EQ(DistanceToSet(Square(), V({4.0, 5.0})), 5.0);
}

}  // namespace
}  // namespace aog
