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

#ifndef AOG_VERIFY_H_
#define AOG_VERIFY_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "aog/games.h"
#include "aog/geometry.h"
#include "aog/harness.h"
#include "aog/metrics.h"

namespace aog {

// Inputs of the potential-drop identity. a4 is derived from the others.
struct IdentityInstance {
  Vector a0, a1, a2, a3;
  Vector b1, b2, b3, b4;
  Vector u2, u4;
  double t = 1.0;
  double q = 0.1;

  // a2 - b3 + (a0 - a2) / (t + 1) - u4.
  Vector a4() const;
};

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  // |lhs - rhs| / max(1, |lhs|, |rhs|).
  double relative_error = 0.0;
  // (1 - 4q) t - 4q <= 0: the identity is still evaluated, but the descent
  // bound built on it does not apply.
  bool degenerate = false;
};

// InvalidArgumentError on mismatched dimensions, t < 1 or q <= 0.
IdentityCheck CheckDescentIdentity(const IdentityInstance& instance);

// Standard normal entries, scaled by `scale`.
IdentityInstance RandomIdentityInstance(int dim, double t, double q,
                                        std::mt19937_64& rng,
                                        double scale = 1.0);

// Instance built from the iterates of a fixed-step AOG run at round t, which
// needs snapshots of rounds t-1, t and t+1. InvalidArgumentError otherwise.
IdentityInstance InstanceFromTrace(std::span<const IterateSnapshot> snapshots,
                                   int t, double step, double lipschitz);

struct SequenceBoundCheck {
  bool hypothesis = true;
  bool conclusion = true;
  std::optional<int> first_hypothesis_violation;  // index k
  std::optional<int> first_conclusion_violation;
  bool ok() const { return hypothesis && conclusion; }
};

// a[0] is a_2. Hypothesis: (k^2/4) a_k <= C1 + p/(1-p) sum_{t=2}^{k-1} a_t.
// Conclusion: a_k <= 4 C1 / ((1 - 3p) k^2). InvalidArgumentError for p
// outside (0, 1/3), negative C1 or negative entries.
SequenceBoundCheck CheckSequenceBound(std::span<const double> a, double c1,
                                      double p);

struct EagAdversaryResult {
  double regret = 0.0;
  double linear_loss = 0.0;
  double comparator_loss = 0.0;
  std::vector<double> actions;
  // Odd rounds play 0, even rounds play max(-eta, -1).
  bool pattern_ok = true;
  std::optional<int> first_pattern_violation;
};

// EAG from 0 on [-1, 1] against the alternating 1/0 opponent of
// f(y1, y2) = y1 * y2 for T played rounds.
EagAdversaryResult RunEagAdversary(int rounds, double step);

struct CertificateResult {
  std::string name;
  bool ok = true;
  int checked = 0;
  // Largest observed value / bound.
  double worst_ratio = 0.0;
  std::optional<int> first_violation;  // round t
};

// P_t and its parts for t = 2..T from a run with kept iterates; element k
// is round k + 2.
std::vector<PotentialWitness> PotentialSeries(const FeasibleSet& joint_set,
                                              const SelfPlayTrace& trace);

struct AogCertificates {
  CertificateResult last_iterate;       // r_tan(x_{t+1/2}) <= 55D/(eta t)
  CertificateResult residual;           // |V(x_t)+c_t| <= 13D/(eta t)
  CertificateResult drift;              // |V(x_t)-V(x_{t-1/2})| <= 13D/(eta t)
  CertificateResult half_step;          // |x_{t+1/2}-x_t| <= 27D/t
  CertificateResult initial_potential;  // P_2 <= 9 D^2
  CertificateResult potential_descent;  // one-step potential bound
  CertificateResult sequence_bound;     // C1 = 10 D^2, p = 1/4
  CertificateResult normal_cone;        // c_t in the normal cone at x_t

  std::vector<const CertificateResult*> all() const;
  bool ok() const;
};

// Requires a fixed-step AOG self-play trace with kept iterates and a bounded
// joint set. InvalidArgumentError otherwise.
AogCertificates CheckAogCertificates(const GameOracle& game,
                                     const SelfPlayTrace& trace);

// r_tan(x_{t+1/2}) <= 1430 H / (eta t) with
// H = max(eta * r_tan(x_1), |x_1 - x_star|).
CertificateResult CheckUnboundedRate(const GameOracle& game,
                                     const SelfPlayTrace& trace,
                                     const Vector& x_star);

// Every recorded S_t stays at or below the adaptation threshold and every
// eta_t equals 1/(3L).
CertificateResult CheckAdaptiveStepConstant(const SelfPlayTrace& trace);

}  // namespace aog

#endif  // AOG_VERIFY_H_
