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

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aog/errors.h"
#include "aog/harness.h"
#include "aog/verify.h"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kViolation = 2;

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> stride;
  std::optional<std::string> algo;
  std::optional<int> horizon;
};

void AddRunFlags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON experiment config")->required();
  app->add_option("--out", o.out, "CSV output path ('-' for stdout)");
  app->add_option("--seed", o.seed, "RNG seed");
  app->add_option("--stride", o.stride, "record every k-th round");
  app->add_option("--algo", o.algo, "algorithm tag for every player");
  app->add_option("--T", o.horizon, "horizon");
}

aog::ExperimentConfig Load(const Overrides& o) {
  aog::ExperimentConfig config = aog::LoadConfig(o.config);
  if (o.seed) config.seed = *o.seed;
  if (o.stride) {
    if (*o.stride < 1) throw aog::ConfigError("stride", "must be >= 1");
    config.stride = *o.stride;
  }
  if (o.horizon) {
    if (*o.horizon < 2) throw aog::ConfigError("T", "must be >= 2");
    config.T = *o.horizon;
  }
  if (o.algo) {
    try {
      config.algorithms = {aog::ParseAlgorithm(*o.algo)};
    } catch (const aog::InvalidArgumentError& e) {
      throw aog::ConfigError("algorithms", e.what());
    }
    config.step_sizes.clear();
  }
  if (!o.out.empty()) config.output = o.out;
  return config;
}

int RunSelfPlayCommand(const Overrides& o) {
  const aog::ExperimentConfig config = Load(o);
  const aog::SelfPlayTrace trace = aog::RunSelfPlay(config);
  aog::EmitCsv(trace, config.output);
  return kOk;
}

int RunAdversarialCommand(const Overrides& o) {
  const aog::ExperimentConfig config = Load(o);
  const aog::AdversarialTrace trace = aog::RunAdversarial(config);
  if (config.output.empty() || config.output == "-") {
    aog::WriteAdversarialCsv(std::cout, trace.rows);
  } else {
    std::ofstream out(config.output);
    if (!out) {
      throw aog::InvalidArgumentError("cannot write '" + config.output + "'");
    }
    aog::WriteAdversarialCsv(out, trace.rows);
  }
  return kOk;
}

void Report(const aog::CertificateResult& c, bool& ok) {
  std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << " checked=" << c.checked
            << " worst_ratio=" << aog::FormatDouble(c.worst_ratio);
  if (c.first_violation) {
    std::cout << " first_violation_t=" << *c.first_violation;
  }
  std::cout << '\n';
  ok = ok && c.ok;
}

bool VerifyIdentity(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const int dims[] = {1, 2, 5, 20};
  const double ts[] = {1.0, 2.0, 10.0, 1000.0};
  const double qs[] = {0.01, 0.1, 0.2};
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const aog::IdentityInstance in = aog::RandomIdentityInstance(
        dims[i % 4], ts[(i / 4) % 4], qs[(i / 16) % 3], rng);
    worst = std::max(worst, aog::CheckDescentIdentity(in).relative_error);
  }
  const bool ok = worst <= 1e-9;
  std::cout << (ok ? "PASS " : "FAIL ") << "descent identity instances="
            << count << " worst_relative_error=" << aog::FormatDouble(worst)
            << '\n';
  return ok;
}

bool VerifySequence() {
  std::vector<double> a;
  const double c1 = 1.0;
  for (int k = 2; k <= 1000; ++k) a.push_back(4.0 * c1 / (double(k) * k));
  const aog::SequenceBoundCheck check = aog::CheckSequenceBound(a, c1, 0.01);
  std::cout << (check.ok() ? "PASS " : "FAIL ")
            << "sequence bound on a_k = 4/k^2\n";
  return check.ok();
}

bool VerifyEag() {
  bool ok = true;
  for (int rounds : {10, 1000, 100000}) {
    const aog::EagAdversaryResult r = aog::RunEagAdversary(rounds, 0.5);
    const bool pass = r.pattern_ok && r.regret >= rounds / 2.0;
    std::cout << (pass ? "PASS " : "FAIL ") << "eag adversary T=" << rounds
              << " regret=" << aog::FormatDouble(r.regret) << '\n';
    ok = ok && pass;
  }
  return ok;
}

bool VerifyTrace(const Overrides& o) {
  const aog::ExperimentConfig config = Load(o);
  if (config.mode != "selfplay") {
    throw aog::ConfigError("mode", "trace verification needs a selfplay run");
  }
  const aog::GameOracle game = aog::MakeGame(config.game, config.seed);
  aog::SelfPlayOptions options;
  options.keep_iterates = true;
  const aog::SelfPlayTrace trace = aog::RunSelfPlay(config, game, options);
  bool ok = true;
  bool any = false;
  if (trace.common_step && game.joint_set().is_bounded()) {
    const aog::AogCertificates certs = aog::CheckAogCertificates(game, trace);
    for (const aog::CertificateResult* c : certs.all()) Report(*c, ok);
    any = true;
  }
  if (trace.common_step && !game.joint_set().is_bounded() &&
      game.known_equilibrium()) {
    Report(aog::CheckUnboundedRate(game, trace, *game.known_equilibrium()),
           ok);
    any = true;
  }
  bool all_adaptive = true;
  for (aog::Algorithm a : config.algorithms) {
    all_adaptive = all_adaptive && a == aog::Algorithm::kAogAdaptive;
  }
  if (all_adaptive) {
    Report(aog::CheckAdaptiveStepConstant(trace), ok);
    any = true;
  }
  if (!any) std::cout << "SKIP no certificate applies to this run\n";
  return ok;
}

void ReadCsv(const std::string& path, const std::string& column,
             std::vector<double>& t, std::vector<double>& values) {
  std::ifstream in(path);
  if (!in) throw aog::InvalidArgumentError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw aog::InvalidArgumentError("'" + path + "' is empty");
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  const std::vector<std::string> header = split(line);
  int t_col = -1;
  int v_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "t") t_col = static_cast<int>(i);
    if (header[i] == column) v_col = static_cast<int>(i);
  }
  if (t_col < 0 || v_col < 0) {
    throw aog::InvalidArgumentError("column '" + column + "' not in " + path);
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) {
      throw aog::InvalidArgumentError(path + ":" + std::to_string(line_no) +
                                      ": wrong number of fields");
    }
    if (cells[v_col].empty()) continue;
    try {
      t.push_back(std::stod(cells[t_col]));
      values.push_back(std::stod(cells[v_col]));
    } catch (const std::exception&) {
      throw aog::InvalidArgumentError(path + ":" + std::to_string(line_no) +
                                      ": not a number");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning dynamics for smooth monotone games"};
  app.require_subcommand(1);

  Overrides selfplay_flags;
  CLI::App* selfplay = app.add_subcommand("selfplay", "run a self-play game");
  AddRunFlags(selfplay, selfplay_flags);

  Overrides adversarial_flags;
  CLI::App* adversarial =
      app.add_subcommand("adversarial", "run a learner against an adversary");
  AddRunFlags(adversarial, adversarial_flags);

  Overrides verify_flags;
  std::vector<std::string> checks;
  int identity_count = 1000;
  std::uint64_t verify_seed = 42;
  CLI::App* verify = app.add_subcommand("verify", "run numeric checks");
  verify
      ->add_option("--check", checks,
                   "identity, sequence, eag, trace (default: all that apply)")
      ->check(CLI::IsMember({"identity", "sequence", "eag", "trace"}));
  verify->add_option("--config", verify_flags.config,
                     "selfplay config for trace certificates");
  verify->add_option("--seed", verify_seed, "seed for random instances");
  verify->add_option("--count", identity_count, "random identity instances");
  verify->add_option("--stride", verify_flags.stride, "record stride");
  verify->add_option("--algo", verify_flags.algo, "algorithm override");
  verify->add_option("--T", verify_flags.horizon, "horizon");

  Overrides slope_flags;
  std::string csv_path;
  std::string column = "r_tan";
  double t_min = 100.0;
  double t_max = 1e300;
  CLI::App* slope = app.add_subcommand("slope", "fit a log-log slope");
  slope->add_option("--csv", csv_path, "existing CSV trace");
  slope->add_option("--config", slope_flags.config, "selfplay config to run");
  slope->add_option("--column", column, "column to fit");
  slope->add_option("--tmin", t_min, "window start");
  slope->add_option("--tmax", t_max, "window end");
  slope->add_option("--seed", slope_flags.seed, "RNG seed");
  slope->add_option("--algo", slope_flags.algo, "algorithm override");
  slope->add_option("--T", slope_flags.horizon, "horizon");
  slope->add_option("--stride", slope_flags.stride, "record stride");

  CLI11_PARSE(app, argc, argv);

  try {
    if (selfplay->parsed()) return RunSelfPlayCommand(selfplay_flags);
    if (adversarial->parsed()) return RunAdversarialCommand(adversarial_flags);
    if (verify->parsed()) {
      if (checks.empty()) {
        checks = {"identity", "sequence", "eag"};
        if (!verify_flags.config.empty()) checks.push_back("trace");
      }
      bool ok = true;
      for (const std::string& check : checks) {
        if (check == "identity") {
          ok = VerifyIdentity(verify_seed, identity_count) && ok;
        }
        if (check == "sequence") ok = VerifySequence() && ok;
        if (check == "eag") ok = VerifyEag() && ok;
        if (check == "trace") {
          if (verify_flags.config.empty()) {
            throw aog::ConfigError("config", "--check trace needs --config");
          }
          ok = VerifyTrace(verify_flags) && ok;
        }
      }
      return ok ? kOk : kViolation;
    }
    if (slope->parsed()) {
      std::vector<double> t;
      std::vector<double> values;
      if (!csv_path.empty()) {
        ReadCsv(csv_path, column, t, values);
      } else if (!slope_flags.config.empty()) {
        const aog::SelfPlayTrace trace = aog::RunSelfPlay(Load(slope_flags));
        for (const aog::RunRecord& row : trace.rows) {
          const std::optional<double> v = aog::RecordColumn(row, column);
          if (!v) continue;
          t.push_back(row.t);
          values.push_back(*v);
        }
      } else {
        throw aog::ConfigError("csv", "slope needs --csv or --config");
      }
      const aog::SlopeFit fit = aog::FitLogLogSlope(t, values, t_min, t_max);
      std::cout << "column=" << column
                << " slope=" << aog::FormatDouble(fit.slope)
                << " intercept=" << aog::FormatDouble(fit.intercept)
                << " r2=" << aog::FormatDouble(fit.r_squared)
                << " points=" << fit.points << '\n';
      return kOk;
    }
  } catch (const aog::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
