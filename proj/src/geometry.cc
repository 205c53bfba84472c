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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aog/errors.h"

namespace aog {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckDim(const FeasibleSet& set, const Vector& v, const char* what) {
  if (v.size() != set.dim()) {
    throw InvalidArgumentError(std::string(what) + " has dimension " +
                               std::to_string(v.size()) + ", set has " +
                               std::to_string(set.dim()));
  }
}

bool NearBound(double x, double bound) {
  return std::abs(x - bound) <=
         kBoundaryTolerance * std::max(1.0, std::abs(bound));
}

void ProjectInto(const FeasibleSet& set, const Vector& point, Eigen::Index at,
                 Vector& out) {
  const Eigen::Index n = set.dim();
  std::visit(
      Overloaded{
          [&](const FeasibleSet::Box& box) {
            out.segment(at, n) = point.segment(at, n)
                                     .cwiseMax(box.lower)
                                     .cwiseMin(box.upper);
          },
          [&](const FeasibleSet::Ball& ball) {
            Vector offset = point.segment(at, n) - ball.center;
            const double norm = offset.norm();
            // Points within a few ulps of the sphere are kept as they are so
            // that projection is exactly idempotent.
            constexpr double kSlack =
                1.0 + 8.0 * std::numeric_limits<double>::epsilon();
            if (norm > ball.radius * kSlack) offset *= ball.radius / norm;
            out.segment(at, n) = ball.center + offset;
          },
          [&](const FeasibleSet::Unconstrained&) {
            out.segment(at, n) = point.segment(at, n);
          },
          [&](const FeasibleSet::Product& product) {
            Eigen::Index offset = at;
            for (const FeasibleSet& factor : product.factors) {
              ProjectInto(factor, point, offset, out);
              offset += factor.dim();
            }
          },
      },
      set.shape());
}

// Squared tangent residual of the block [at, at + dim) of an on-set point.
double SquaredResidual(const FeasibleSet& set, const Vector& point,
                       const Vector& grad, Eigen::Index at) {
  const Eigen::Index n = set.dim();
  return std::visit(
      Overloaded{
          [&](const FeasibleSet::Box& box) {
            double sum = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
              const double x = point[at + j];
              const double g = grad[at + j];
              const bool at_lower = NearBound(x, box.lower[j]);
              const bool at_upper = NearBound(x, box.upper[j]);
              double r;
              if (at_lower && at_upper) {
                r = 0.0;
              } else if (at_lower) {
                r = std::max(-g, 0.0);
              } else if (at_upper) {
                r = std::max(g, 0.0);
              } else {
                r = std::abs(g);
              }
              sum += r * r;
            }
            return sum;
          },
          [&](const FeasibleSet::Ball& ball) {
            const Vector offset = point.segment(at, n) - ball.center;
            const Vector g = grad.segment(at, n);
            const double dist = offset.norm();
            if (dist < ball.radius - kBoundaryTolerance *
                                         std::max(1.0, ball.radius)) {
              return g.squaredNorm();
            }
            // Normal cone is {lambda * normal : lambda >= 0}; only an inward
            // pointing gradient component can be cancelled.
            const Vector normal = offset / dist;
            const double along = g.dot(normal);
            return (g - std::min(0.0, along) * normal).squaredNorm();
          },
          [&](const FeasibleSet::Unconstrained&) {
            return grad.segment(at, n).squaredNorm();
          },
          [&](const FeasibleSet::Product& product) {
            double sum = 0.0;
            Eigen::Index offset = at;
            for (const FeasibleSet& factor : product.factors) {
              sum += SquaredResidual(factor, point, grad, offset);
              offset += factor.dim();
            }
            return sum;
          },
      },
      set.shape());
}

void MinimizerInto(const FeasibleSet& set, const Vector& grad,
                   Eigen::Index at, Vector& out) {
  const Eigen::Index n = set.dim();
  std::visit(
      Overloaded{
          [&](const FeasibleSet::Box& box) {
            for (Eigen::Index j = 0; j < n; ++j) {
              out[at + j] = grad[at + j] < 0.0 ? box.upper[j] : box.lower[j];
            }
          },
          [&](const FeasibleSet::Ball& ball) {
            const Vector g = grad.segment(at, n);
            const double norm = g.norm();
            if (norm == 0.0) {
              out.segment(at, n) = ball.center;
              out[at] -= ball.radius;
            } else {
              out.segment(at, n) = ball.center - (ball.radius / norm) * g;
            }
          },
          [&](const FeasibleSet::Unconstrained&) {
            throw UnsupportedError(
                "linear minimization over an unbounded set");
          },
          [&](const FeasibleSet::Product& product) {
            Eigen::Index offset = at;
            for (const FeasibleSet& factor : product.factors) {
              MinimizerInto(factor, grad, offset, out);
              offset += factor.dim();
            }
          },
      },
      set.shape());
}

void SampleInto(const FeasibleSet& set, std::mt19937_64& rng, double scale,
                Eigen::Index at, Vector& out) {
  const Eigen::Index n = set.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::visit(
      Overloaded{
          [&](const FeasibleSet::Box& box) {
            for (Eigen::Index j = 0; j < n; ++j) {
              out[at + j] = box.lower[j] +
                            uniform(rng) * (box.upper[j] - box.lower[j]);
            }
          },
          [&](const FeasibleSet::Ball& ball) {
            Vector direction(n);
            for (Eigen::Index j = 0; j < n; ++j) direction[j] = normal(rng);
            const double radius =
                ball.radius * std::pow(uniform(rng), 1.0 / double(n));
            out.segment(at, n) =
                ball.center + radius * direction / direction.norm();
          },
          [&](const FeasibleSet::Unconstrained&) {
            for (Eigen::Index j = 0; j < n; ++j) {
              out[at + j] = scale * normal(rng);
            }
          },
          [&](const FeasibleSet::Product& product) {
            Eigen::Index offset = at;
            for (const FeasibleSet& factor : product.factors) {
              SampleInto(factor, rng, scale, offset, out);
              offset += factor.dim();
            }
          },
      },
      set.shape());
}

Vector SnapOntoSet(const FeasibleSet& set, const Vector& point) {
  CheckDim(set, point, "point");
  Vector projected = Project(set, point);
  const double scale = std::max(1.0, point.lpNorm<Eigen::Infinity>());
  if ((projected - point).norm() > kBoundaryTolerance * scale) {
    throw DomainError("point lies outside the feasible set");
  }
  return projected;
}

}  // namespace

FeasibleSet FeasibleSet::MakeBox(Vector lower, Vector upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw InvalidArgumentError("box bounds must have equal positive size");
  }
  if (!lower.allFinite() || !upper.allFinite()) {
    throw InvalidArgumentError("box bounds must be finite");
  }
  if ((lower.array() > upper.array()).any()) {
    throw InvalidArgumentError("box requires lower <= upper");
  }
  const int dim = static_cast<int>(lower.size());
  return FeasibleSet(Box{std::move(lower), std::move(upper)}, dim, true);
}

FeasibleSet FeasibleSet::MakeCube(int dim, double lower, double upper) {
  if (dim <= 0) throw InvalidArgumentError("cube dimension must be positive");
  return MakeBox(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

FeasibleSet FeasibleSet::MakeBall(Vector center, double radius) {
  if (center.size() == 0 || !center.allFinite()) {
    throw InvalidArgumentError("ball center must be finite and nonempty");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgumentError("ball radius must be positive");
  }
  const int dim = static_cast<int>(center.size());
  return FeasibleSet(Ball{std::move(center), radius}, dim, true);
}

FeasibleSet FeasibleSet::MakeUnconstrained(int dim) {
  if (dim <= 0) {
    throw InvalidArgumentError("unconstrained dimension must be positive");
  }
  return FeasibleSet(Unconstrained{dim}, dim, false);
}

FeasibleSet FeasibleSet::MakeProduct(std::vector<FeasibleSet> factors) {
  if (factors.empty()) {
    throw InvalidArgumentError("product needs at least one factor");
  }
  int dim = 0;
  bool bounded = true;
  for (const FeasibleSet& factor : factors) {
    dim += factor.dim();
    bounded = bounded && factor.is_bounded();
  }
  return FeasibleSet(Product{std::move(factors)}, dim, bounded);
}

Vector Project(const FeasibleSet& set, const Vector& point) {
  CheckDim(set, point, "point");
  Vector out(point.size());
  ProjectInto(set, point, 0, out);
  return out;
}

double DistanceToSet(const FeasibleSet& set, const Vector& point) {
  return (Project(set, point) - point).norm();
}

bool Contains(const FeasibleSet& set, const Vector& point) {
  const double scale = std::max(1.0, point.lpNorm<Eigen::Infinity>());
  return DistanceToSet(set, point) <= kBoundaryTolerance * scale;
}

double TangentResidual(const FeasibleSet& set, const Vector& point,
                       const Vector& grad) {
  CheckDim(set, grad, "gradient");
  const Vector on_set = SnapOntoSet(set, point);
  return std::sqrt(SquaredResidual(set, on_set, grad, 0));
}

double LinearizedGap(const FeasibleSet& set, const Vector& point,
                     const Vector& grad) {
  CheckDim(set, grad, "gradient");
  if (!set.is_bounded()) {
    throw UnsupportedError("gap is undefined on an unbounded set");
  }
  const Vector on_set = SnapOntoSet(set, point);
  const Vector best = LinearMinimizer(set, grad);
  return std::max(0.0, grad.dot(on_set) - grad.dot(best));
}

Vector LinearMinimizer(const FeasibleSet& set, const Vector& grad) {
  CheckDim(set, grad, "gradient");
  if (!set.is_bounded()) {
    throw UnsupportedError("linear minimization over an unbounded set");
  }
  Vector out(grad.size());
  MinimizerInto(set, grad, 0, out);
  return out;
}

std::optional<double> Diameter(const FeasibleSet& set) {
  return std::visit(
      Overloaded{
          [](const FeasibleSet::Box& box) -> std::optional<double> {
            return (box.upper - box.lower).norm();
          },
          [](const FeasibleSet::Ball& ball) -> std::optional<double> {
            return 2.0 * ball.radius;
          },
          [](const FeasibleSet::Unconstrained&) -> std::optional<double> {
            return std::nullopt;
          },
          [](const FeasibleSet::Product& product) -> std::optional<double> {
            double sum = 0.0;
            for (const FeasibleSet& factor : product.factors) {
              const std::optional<double> d = Diameter(factor);
              if (!d) return std::nullopt;
              sum += *d * *d;
            }
            return std::sqrt(sum);
          },
      },
      set.shape());
}

Vector SamplePoint(const FeasibleSet& set, std::mt19937_64& rng,
                   double unbounded_scale) {
  Vector out(set.dim());
  SampleInto(set, rng, unbounded_scale, 0, out);
  return out;
}

}  // namespace aog
