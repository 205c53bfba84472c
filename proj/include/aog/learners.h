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

#ifndef AOG_LEARNERS_H_
#define AOG_LEARNERS_H_

#include <optional>
#include <string>
#include <string_view>

#include "aog/geometry.h"

namespace aog {

enum class Algorithm {
  kGd,           // online projected gradient descent
  kOg,           // optimistic gradient
  kEg,           // extragradient, two played points per iteration
  kEag,          // extra anchored gradient, two played points per iteration
  kAog,          // accelerated optimistic gradient, constant step
  kAogAdaptive,  // accelerated optimistic gradient with step-size adaptation
};

// Config tags: "gd", "og", "eg", "eag", "aog", "aog_adaptive".
std::string_view AlgorithmTag(Algorithm algorithm);
// InvalidArgumentError on an unknown tag.
Algorithm ParseAlgorithm(std::string_view tag);

// EG and EAG need a gradient at the base iterate before extrapolating, so
// every iteration consists of two played rounds.
bool IsTwoPhase(Algorithm algorithm);

struct LearnerConfig {
  // Constant step for fixed-step algorithms. Defaults to 1/(sqrt(6) L).
  // Rejected for kAogAdaptive, which always starts at 1/(3L).
  std::optional<double> step_size;
  double lipschitz = 1.0;
  double diameter = 1.0;
  // Zeroes the anchoring pull of AOG/EAG (reduces them to OG/EG).
  bool drop_anchor = false;
};

// Threshold on the gradient variation above which the adaptive learner
// leaves its constant step: 4500 * pi * D^2 * L^2.
double AdaptiveThreshold(double lipschitz, double diameter);

// One player's online learning state. Each played round is a Propose() that
// returns the action, followed by an Update() with the gradient observed at
// that action.
class Learner {
 public:
  // InvalidArgumentError if `start` is infeasible or constants are not
  // positive.
  Learner(Algorithm algorithm, FeasibleSet set, Vector start,
          LearnerConfig config = {});

  // Action for this round; idempotent until the next Update().
  const Vector& Propose();
  // Feedback for the action returned by Propose(). StateError if Propose()
  // was not called this round.
  void Update(const Vector& gradient);

  Algorithm algorithm() const { return algorithm_; }
  const FeasibleSet& set() const { return set_; }
  // Iteration counter t (starts at 1). For EG/EAG one iteration spans two
  // played rounds.
  int iteration() const { return t_; }
  // True when the next Propose() plays the extrapolated point (EG/EAG).
  bool in_half_phase() const { return half_phase_; }
  // Step size eta_t used by the current iteration.
  double step_size() const { return eta_; }
  // S_t = sum_{s=2}^{t-1} |g_{s+1/2} - g_{s-1/2}|^2, tracked for the
  // single-phase algorithms; only the adaptive learner acts on it.
  double variation() const { return variation_; }
  bool adaptive_step_active() const { return latched_; }
  double threshold() const { return threshold_; }

  const Vector& anchor() const { return anchor_; }
  const Vector& iterate() const { return x_; }
  // x_{t+1/2}; equals iterate() before the first Propose() of an iteration.
  const Vector& half_iterate() const { return x_half_; }
  // g_{t-1/2}: the last gradient received (zero before round 1).
  const Vector& last_gradient() const { return g_prev_; }

 private:
  double AnchorWeight() const;
  // Pi[x_t - eta * g + w * (x_1 - x_t)].
  Vector Step(const Vector& gradient) const;

  Algorithm algorithm_;
  FeasibleSet set_;
  LearnerConfig config_;
  Vector anchor_;
  Vector x_;
  Vector x_half_;
  Vector g_prev_;
  int t_ = 1;
  double eta_;
  double variation_ = 0.0;
  double threshold_;
  bool latched_ = false;
  bool proposed_ = false;
  bool half_phase_ = false;
};

}  // namespace aog

#endif  // AOG_LEARNERS_H_
