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

#include "aog/verify.h"

#include <algorithm>
#include <cmath>

#include "aog/errors.h"

namespace aog {
namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;

bool WithinTolerance(double value, double bound) {
  return value <= bound + std::max(kAbsTol, kRelTol * std::abs(bound));
}

void Observe(CertificateResult& result, int t, double value, double bound,
             bool pass) {
  ++result.checked;
  const double ratio = bound > 0.0 ? value / bound
                       : value > 0.0 ? HUGE_VAL
                                     : 0.0;
  result.worst_ratio = std::max(result.worst_ratio, ratio);
  if (!pass && result.ok) {
    result.ok = false;
    result.first_violation = t;
  }
}

}  // namespace

Vector IdentityInstance::a4() const {
  return a2 - b3 + (a0 - a2) / (t + 1.0) - u4;
}

IdentityCheck CheckDescentIdentity(const IdentityInstance& in) {
  const Eigen::Index d = in.a0.size();
  for (const Vector* v : {&in.a1, &in.a2, &in.a3, &in.b1, &in.b2, &in.b3,
                          &in.b4, &in.u2, &in.u4}) {
    if (v->size() != d) {
      throw InvalidArgumentError("identity instance has mixed dimensions");
    }
  }
  if (!(in.t >= 1.0)) throw InvalidArgumentError("identity needs t >= 1");
  if (!(in.q > 0.0)) throw InvalidArgumentError("identity needs q > 0");

  const double t = in.t;
  const double q = in.q;
  const double tt = t * (t + 1.0);
  const Vector a4 = in.a4();
  const Vector& a0 = in.a0;
  const Vector& a2 = in.a2;
  const Vector& a3 = in.a3;
  const Vector& b1 = in.b1;
  const Vector& b2 = in.b2;
  const Vector& b3 = in.b3;
  const Vector& b4 = in.b4;
  const Vector& u2 = in.u2;
  const Vector& u4 = in.u4;

  const double p_t = tt / 2.0 * ((b2 + u2).squaredNorm() +
                                 (b2 - b1).squaredNorm()) +
                     t * (b2 + u2).dot(a2 - a0);
  const double p_next =
      (t + 1.0) * (t + 2.0) / 2.0 *
          ((b4 + u4).squaredNorm() + (b4 - b3).squaredNorm()) +
      (t + 1.0) * (b4 + u4).dot(a4 - a0);
  const Vector pull = (a0 - a2) / (t + 1.0);

  IdentityCheck out;
  out.lhs = p_t - p_next - tt * (b4 - b2).dot(a4 - a2) -
            tt / (4.0 * q) *
                (q * (a4 - a3).squaredNorm() - (b4 - b3).squaredNorm()) -
            tt * u4.dot(a4 - a2) -
            tt / 2.0 *
                (u2.dot(a2 - a3) + u2.dot(a2 - a4) +
                 (a2 - b1 + pull - a3).dot(a3 - a4));
  const double coef = ((1.0 - 4.0 * q) * t - 4.0 * q) / (4.0 * q);
  out.rhs = tt / 2.0 * ((a3 - a4) / 2.0 + b1 - b2).squaredNorm() +
            tt / 2.0 * ((a3 + a4) / 2.0 - a2 + b2 + u2 - pull).squaredNorm() +
            coef * (t + 1.0) * (b3 - b4).squaredNorm() +
            (t + 1.0) * (b3 - b4).dot(b4 + u4);
  out.relative_error = std::abs(out.lhs - out.rhs) /
                       std::max({1.0, std::abs(out.lhs), std::abs(out.rhs)});
  out.degenerate = coef <= 0.0;
  return out;
}

IdentityInstance RandomIdentityInstance(int dim, double t, double q,
                                        std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = scale * normal(rng);
    return v;
  };
  IdentityInstance in;
  in.a0 = draw();
  in.a1 = draw();
  in.a2 = draw();
  in.a3 = draw();
  in.b1 = draw();
  in.b2 = draw();
  in.b3 = draw();
  in.b4 = draw();
  in.u2 = draw();
  in.u4 = draw();
  in.t = t;
  in.q = q;
  return in;
}

IdentityInstance InstanceFromTrace(std::span<const IterateSnapshot> snapshots,
                                   int t, double step, double lipschitz) {
  if (t < 2 || static_cast<size_t>(t) + 1 > snapshots.size()) {
    throw InvalidArgumentError("trace has no rounds t-1, t, t+1 for t=" +
                               std::to_string(t));
  }
  const IterateSnapshot& prev = snapshots[t - 2];
  const IterateSnapshot& cur = snapshots[t - 1];
  const IterateSnapshot& next = snapshots[t];
  if (prev.grad_base.size() == 0 || cur.grad_base.size() == 0 ||
      next.grad_base.size() == 0) {
    throw InvalidArgumentError("snapshots lack base-point gradients");
  }
  const Vector& x1 = snapshots[0].base;
  IdentityInstance in;
  in.a0 = x1;
  in.a1 = prev.half;
  in.a2 = cur.base;
  in.a3 = cur.half;
  in.b1 = step * prev.grad_half;
  in.b2 = step * cur.grad_base;
  in.b3 = step * cur.grad_half;
  in.b4 = step * next.grad_base;
  const double td = t;
  in.u2 = prev.base - step * prev.grad_half + (x1 - prev.base) / td - cur.base;
  in.u4 = cur.base - step * cur.grad_half + (x1 - cur.base) / (td + 1.0) -
          next.base;
  in.t = td;
  in.q = (step * lipschitz) * (step * lipschitz);
  return in;
}

SequenceBoundCheck CheckSequenceBound(std::span<const double> a, double c1,
                                      double p) {
  if (!(p > 0.0 && p < 1.0 / 3.0)) {
    throw InvalidArgumentError("p must lie in (0, 1/3)");
  }
  if (!(c1 >= 0.0)) throw InvalidArgumentError("C1 must be nonnegative");
  SequenceBoundCheck out;
  double partial = 0.0;  // sum_{t=2}^{k-1} a_t
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0)) {
      throw InvalidArgumentError("sequence entries must be nonnegative");
    }
    const int k = static_cast<int>(i) + 2;
    const double k2 = static_cast<double>(k) * k;
    if (!WithinTolerance(k2 / 4.0 * a[i], c1 + p / (1.0 - p) * partial) &&
        out.hypothesis) {
      out.hypothesis = false;
      out.first_hypothesis_violation = k;
    }
    if (!WithinTolerance(a[i], 4.0 * c1 / ((1.0 - 3.0 * p) * k2)) &&
        out.conclusion) {
      out.conclusion = false;
      out.first_conclusion_violation = k;
    }
    partial += a[i];
  }
  return out;
}

EagAdversaryResult RunEagAdversary(int rounds, double step) {
  if (rounds < 1) throw InvalidArgumentError("rounds must be positive");
  Learner learner(Algorithm::kEag, FeasibleSet::MakeCube(1, -1.0, 1.0),
                  Vector::Zero(1), LearnerConfig{step, 1.0, 2.0, false});
  EagAdversaryResult out;
  double opponent_sum = 0.0;
  const double expected_even = std::max(-step, -1.0);
  for (int t = 1; t <= rounds; ++t) {
    const double y = learner.Propose()[0];
    const double opponent = (t % 2 == 1) ? 1.0 : 0.0;
    out.actions.push_back(y);
    out.linear_loss += y * opponent;
    opponent_sum += opponent;
    const double expected = (t % 2 == 1) ? 0.0 : expected_even;
    if (y != expected && out.pattern_ok) {
      out.pattern_ok = false;
      out.first_pattern_violation = t;
    }
    Vector g(1);
    g[0] = opponent;
    learner.Update(g);
  }
  out.comparator_loss = -std::abs(opponent_sum);
  out.regret = out.linear_loss - out.comparator_loss;
  return out;
}

std::vector<PotentialWitness> PotentialSeries(const FeasibleSet& joint_set,
                                              const SelfPlayTrace& trace) {
  if (!trace.common_step) {
    throw InvalidArgumentError("potential needs fixed-step AOG players");
  }
  std::vector<PotentialWitness> out;
  const auto& it = trace.iterates;
  for (size_t k = 1; k < it.size(); ++k) {
    PotentialInputs in;
    in.t = static_cast<int>(k) + 1;
    in.step = *trace.common_step;
    in.anchor = trace.start;
    in.prev_iterate = it[k - 1].base;
    in.prev_half = it[k - 1].half;
    in.iterate = it[k].base;
    in.grad_prev_half = it[k - 1].grad_half;
    in.grad_iterate = it[k].grad_base;
    out.push_back(ComputePotential(joint_set, in));
  }
  return out;
}

std::vector<const CertificateResult*> AogCertificates::all() const {
  return {&last_iterate,      &residual,          &drift,
          &half_step,         &initial_potential, &potential_descent,
          &sequence_bound,    &normal_cone};
}

bool AogCertificates::ok() const {
  for (const CertificateResult* c : all()) {
    if (!c->ok) return false;
  }
  return true;
}

AogCertificates CheckAogCertificates(const GameOracle& game,
                                     const SelfPlayTrace& trace) {
  if (!trace.common_step) {
    throw InvalidArgumentError("certificates need fixed-step AOG players");
  }
  const std::optional<double> diameter = game.diameter();
  if (!diameter) throw InvalidArgumentError("certificates need a bounded set");
  if (trace.iterates.size() < 2) {
    throw InvalidArgumentError("certificates need kept iterates");
  }
  const double d = *diameter;
  const double eta = *trace.common_step;
  const double q = (eta * game.lipschitz()) * (eta * game.lipschitz());

  AogCertificates out;
  out.last_iterate.name = "last-iterate rate";
  out.residual.name = "residual proxy";
  out.drift.name = "gradient drift";
  out.half_step.name = "half-step distance";
  out.initial_potential.name = "initial potential";
  out.potential_descent.name = "potential descent";
  out.sequence_bound.name = "sequence bound";
  out.normal_cone.name = "normal cone";

  for (const RunRecord& row : trace.rows) {
    if (row.t < 2) continue;
    const double bound = 55.0 * d / (eta * row.t);
    Observe(out.last_iterate, row.t, row.r_tan, bound, row.r_tan <= bound);
  }
  for (size_t k = 0; k < trace.iterates.size(); ++k) {
    const int t = static_cast<int>(k) + 1;
    const IterateSnapshot& s = trace.iterates[k];
    const double dist = (s.half - s.base).norm();
    const double bound = 27.0 * d / t;
    Observe(out.half_step, t, dist, bound, dist <= bound);
  }

  const std::vector<PotentialWitness> series =
      PotentialSeries(game.joint_set(), trace);
  std::vector<double> a;
  for (size_t k = 0; k < series.size(); ++k) {
    const int t = static_cast<int>(k) + 2;
    const PotentialWitness& w = series[k];
    const double bound = 13.0 * d / (eta * t);
    const double residual = std::sqrt(w.residual_sq) / eta;
    const double drift = std::sqrt(w.drift_sq) / eta;
    Observe(out.residual, t, residual, bound, residual <= bound);
    Observe(out.drift, t, drift, bound, drift <= bound);
    Observe(out.normal_cone, t, w.in_normal_cone ? 0.0 : 1.0, 1.0,
            w.in_normal_cone);
    a.push_back(w.residual_sq + 2.0 * w.drift_sq);
  }
  if (!series.empty()) {
    const double bound = 9.0 * d * d;
    Observe(out.initial_potential, 2, series[0].value, bound,
            series[0].value <= bound);
  }
  if (q < 0.25) {
    const double coef = 3.0 * q / (2.0 * (1.0 - 4.0 * q));
    for (size_t k = 0; k + 1 < series.size(); ++k) {
      const int t = static_cast<int>(k) + 2;
      const double p_t = series[k].value;
      const double allowed =
          p_t + coef * series[k + 1].residual_sq +
          1e-8 * std::max(1.0, std::abs(p_t));
      const double p_next = series[k + 1].value;
      Observe(out.potential_descent, t + 1, p_next - p_t, allowed - p_t,
              p_next <= allowed);
    }
  } else {
    out.potential_descent.ok = false;
  }

  const double c1 = 10.0 * d * d;
  const double p = 0.25;
  const SequenceBoundCheck seq = CheckSequenceBound(a, c1, p);
  out.sequence_bound.checked = static_cast<int>(a.size());
  out.sequence_bound.ok = seq.ok();
  if (!seq.ok()) {
    out.sequence_bound.first_violation =
        seq.first_hypothesis_violation ? seq.first_hypothesis_violation
                                       : seq.first_conclusion_violation;
  }
  for (size_t k = 0; k < a.size(); ++k) {
    const double kk = static_cast<double>(k) + 2.0;
    out.sequence_bound.worst_ratio =
        std::max(out.sequence_bound.worst_ratio,
                 a[k] / (4.0 * c1 / ((1.0 - 3.0 * p) * kk * kk)));
  }
  return out;
}

CertificateResult CheckUnboundedRate(const GameOracle& game,
                                     const SelfPlayTrace& trace,
                                     const Vector& x_star) {
  if (!trace.common_step) {
    throw InvalidArgumentError("rate check needs fixed-step AOG players");
  }
  const double eta = *trace.common_step;
  const Vector& x1 = trace.start;
  const double r1 =
      TangentResidual(game.joint_set(), x1, game.Gradient(x1));
  const double h = std::max(eta * r1, (x1 - x_star).norm());
  CertificateResult out;
  out.name = "unbounded last-iterate rate";
  for (const RunRecord& row : trace.rows) {
    if (row.t < 2) continue;
    const double bound = 1430.0 * h / (eta * row.t);
    Observe(out, row.t, row.r_tan, bound, row.r_tan <= bound);
  }
  return out;
}

CertificateResult CheckAdaptiveStepConstant(const SelfPlayTrace& trace) {
  if (!trace.diameter) {
    throw InvalidArgumentError("adaptive check needs a diameter");
  }
  const double threshold = AdaptiveThreshold(trace.lipschitz, *trace.diameter);
  const double eta0 = 1.0 / (3.0 * trace.lipschitz);
  CertificateResult out;
  out.name = "adaptive step stays constant";
  for (const RunRecord& row : trace.rows) {
    for (size_t i = 0; i < row.variation.size(); ++i) {
      const bool pass = row.variation[i] <= threshold && row.eta[i] == eta0;
      Observe(out, row.t, row.variation[i], threshold, pass);
    }
  }
  return out;
}

}  // namespace aog
