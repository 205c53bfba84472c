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

#include "aog/learners.h"

#include <cmath>
#include <numbers>
#include <string>

#include "aog/errors.h"

namespace aog {

std::string_view AlgorithmTag(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGd:
      return "gd";
    case Algorithm::kOg:
      return "og";
    case Algorithm::kEg:
      return "eg";
    case Algorithm::kEag:
      return "eag";
    case Algorithm::kAog:
      return "aog";
    case Algorithm::kAogAdaptive:
      return "aog_adaptive";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view tag) {
  for (Algorithm a : {Algorithm::kGd, Algorithm::kOg, Algorithm::kEg,
                      Algorithm::kEag, Algorithm::kAog,
                      Algorithm::kAogAdaptive}) {
    if (AlgorithmTag(a) == tag) return a;
  }
  throw InvalidArgumentError("unknown algorithm tag '" + std::string(tag) +
                             "'");
}

bool IsTwoPhase(Algorithm algorithm) {
  return algorithm == Algorithm::kEg || algorithm == Algorithm::kEag;
}

double AdaptiveThreshold(double lipschitz, double diameter) {
  return 4500.0 * std::numbers::pi * diameter * diameter * lipschitz *
         lipschitz;
}

Learner::Learner(Algorithm algorithm, FeasibleSet set, Vector start,
                 LearnerConfig config)
    : algorithm_(algorithm),
      set_(std::move(set)),
      config_(config),
      anchor_(std::move(start)) {
  if (anchor_.size() != set_.dim()) {
    throw InvalidArgumentError("start point dimension does not match set");
  }
  if (!anchor_.allFinite() || !Contains(set_, anchor_)) {
    throw InvalidArgumentError("start point is not in the feasible set");
  }
  if (!(config_.lipschitz > 0.0) || !(config_.diameter > 0.0)) {
    throw InvalidArgumentError("L and D must be positive");
  }
  if (algorithm_ == Algorithm::kAogAdaptive) {
    if (config_.step_size) {
      throw InvalidArgumentError(
          "aog_adaptive derives its step from L; no step_size override");
    }
    eta_ = 1.0 / (3.0 * config_.lipschitz);
  } else {
    eta_ = config_.step_size.value_or(
        1.0 / (std::sqrt(6.0) * config_.lipschitz));
    if (!(eta_ > 0.0) || !std::isfinite(eta_)) {
      throw InvalidArgumentError("step size must be positive");
    }
  }
  threshold_ = AdaptiveThreshold(config_.lipschitz, config_.diameter);
  anchor_ = Project(set_, anchor_);
  x_ = anchor_;
  x_half_ = anchor_;
  g_prev_ = Vector::Zero(anchor_.size());
}

double Learner::AnchorWeight() const {
  const bool anchored =
      algorithm_ == Algorithm::kAog || algorithm_ == Algorithm::kAogAdaptive ||
      algorithm_ == Algorithm::kEag;
  if (!anchored || config_.drop_anchor) return 0.0;
  return 1.0 / (t_ + 1.0);
}

Vector Learner::Step(const Vector& gradient) const {
  const double w = AnchorWeight();
  if (w == 0.0) return Project(set_, x_ - eta_ * gradient);
  return Project(set_, x_ - eta_ * gradient + w * (anchor_ - x_));
}

const Vector& Learner::Propose() {
  if (proposed_) return IsTwoPhase(algorithm_) && !half_phase_ ? x_ : x_half_;
  proposed_ = true;
  switch (algorithm_) {
    case Algorithm::kGd:
      x_half_ = x_;
      return x_half_;
    case Algorithm::kOg:
    case Algorithm::kAog:
    case Algorithm::kAogAdaptive:
      x_half_ = Step(g_prev_);
      return x_half_;
    case Algorithm::kEg:
    case Algorithm::kEag:
      // Base phase plays x_t; the half phase plays x_{t+1/2}.
      return half_phase_ ? x_half_ : x_;
  }
  return x_half_;
}

void Learner::Update(const Vector& gradient) {
  if (!proposed_) throw StateError("Update() called before Propose()");
  if (gradient.size() != x_.size()) {
    throw InvalidArgumentError("gradient dimension does not match action");
  }
  if (!gradient.allFinite()) {
    throw InvalidArgumentError("gradient feedback must be finite");
  }
  proposed_ = false;

  if (IsTwoPhase(algorithm_) && !half_phase_) {
    x_half_ = Step(gradient);
    half_phase_ = true;
    g_prev_ = gradient;
    return;
  }

  // Single-phase algorithms, or the second round of an EG/EAG iteration.
  const Vector next = Step(gradient);
  if (!IsTwoPhase(algorithm_) && t_ >= 2) {
    variation_ += (gradient - g_prev_).squaredNorm();
  }
  x_ = next;
  g_prev_ = gradient;
  half_phase_ = false;
  if (algorithm_ == Algorithm::kAogAdaptive) {
    if (latched_ || variation_ > threshold_) {
      latched_ = true;
      eta_ = 1.0 / std::sqrt(1.0 + variation_);
    }
  }
  ++t_;
}

}  // namespace aog
