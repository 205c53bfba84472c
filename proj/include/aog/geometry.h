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

#ifndef AOG_GEOMETRY_H_
#define AOG_GEOMETRY_H_

#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "Eigen/Core"

namespace aog {

using Vector = Eigen::VectorXd;

// A closed convex action set: a box, a Euclidean ball, an unconstrained
// space, or a Cartesian product of those. Values are immutable once built.
class FeasibleSet {
 public:
  struct Box {
    Vector lower;
    Vector upper;
  };
  struct Ball {
    Vector center;
    double radius;
  };
  struct Unconstrained {
    int dim;
  };
  struct Product {
    std::vector<FeasibleSet> factors;
  };
  using Variant = std::variant<Box, Ball, Unconstrained, Product>;

  // Throws InvalidArgumentError unless lower <= upper componentwise and both
  // are finite with equal, positive dimension.
  static FeasibleSet MakeBox(Vector lower, Vector upper);
  // [lower, upper]^dim.
  static FeasibleSet MakeCube(int dim, double lower, double upper);
  static FeasibleSet MakeBall(Vector center, double radius);
  static FeasibleSet MakeUnconstrained(int dim);
  static FeasibleSet MakeProduct(std::vector<FeasibleSet> factors);

  int dim() const { return dim_; }
  bool is_bounded() const { return bounded_; }
  const Variant& shape() const { return shape_; }

 private:
  FeasibleSet(Variant shape, int dim, bool bounded)
      : shape_(std::move(shape)), dim_(dim), bounded_(bounded) {}

  Variant shape_;
  int dim_;
  bool bounded_;
};

// Coordinates within this relative distance of a bound count as on it.
inline constexpr double kBoundaryTolerance = 1e-9;

// Euclidean projection onto `set`. Throws InvalidArgumentError on a dimension
// mismatch.
Vector Project(const FeasibleSet& set, const Vector& point);

// Euclidean distance from `point` to `set`.
double DistanceToSet(const FeasibleSet& set, const Vector& point);

// True when `point` is within kBoundaryTolerance * max(1, |point|_inf) of
// `set`.
bool Contains(const FeasibleSet& set, const Vector& point);

// min over c in N_set(point) of |grad + c|, using the closed form of each
// shape. The point is snapped onto the set first when it is within tolerance;
// otherwise DomainError.
double TangentResidual(const FeasibleSet& set, const Vector& point,
                       const Vector& grad);

// max over x' in set of <grad, point - x'>. UnsupportedError on unbounded
// sets, DomainError when `point` is not in the set.
double LinearizedGap(const FeasibleSet& set, const Vector& point,
                     const Vector& grad);

// argmin over x in set of <grad, x>. Ties go to the componentwise lowest
// point (lower bound on a box, center - radius * e_0 on a ball).
// UnsupportedError on unbounded sets.
Vector LinearMinimizer(const FeasibleSet& set, const Vector& grad);

// sup |x - x'| over the set, or nullopt for unbounded sets.
std::optional<double> Diameter(const FeasibleSet& set);

// Uniform sample from a bounded set. Unconstrained coordinates are drawn
// from N(0, unbounded_scale^2).
Vector SamplePoint(const FeasibleSet& set, std::mt19937_64& rng,
                   double unbounded_scale = 10.0);

}  // namespace aog

#endif  // AOG_GEOMETRY_H_
