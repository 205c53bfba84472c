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

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "aog/errors.h"
#include "aog/harness.h"

namespace aog {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& object, const std::set<std::string>& known,
                       const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) {
      throw ConfigError(where.empty() ? key : where + "." + key,
                        "unknown key");
    }
  }
}

double GetNumber(const json& object, const std::string& key, double fallback,
                 const std::string& where) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number()) throw ConfigError(where + key, "expected a number");
  return v.get<double>();
}

long GetInteger(const json& object, const std::string& key, long fallback,
                const std::string& where) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(where + key, "expected an integer");
  }
  return v.get<long>();
}

std::vector<int> GetDims(const json& object, const std::string& key,
                         std::vector<int> fallback, const std::string& where) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError(where + key, "expected a nonempty array of integers");
  }
  std::vector<int> dims;
  for (const json& d : v) {
    if (!d.is_number_integer() || d.get<int>() <= 0) {
      throw ConfigError(where + key, "dimensions must be positive integers");
    }
    dims.push_back(d.get<int>());
  }
  return dims;
}

MetricSelection ParseMetrics(const json& v) {
  if (!v.is_array()) throw ConfigError("metrics", "expected an array");
  MetricSelection m{false, false, false, false, false};
  for (const json& item : v) {
    if (!item.is_string()) throw ConfigError("metrics", "expected strings");
    const std::string name = item.get<std::string>();
    if (name == "gap") {
      m.gap = true;
    } else if (name == "tgap") {
      m.tgap = true;
    } else if (name == "potential") {
      m.potential = true;
    } else if (name == "extreg") {
      m.ext_regret = true;
    } else if (name == "dynreg") {
      m.dyn_regret = true;
    } else if (name != "r_tan") {
      throw ConfigError("metrics", "unknown metric '" + name + "'");
    }
  }
  return m;
}

template <class T, class F>
std::vector<T> OneOrMany(const json& v, const std::string& field, F parse) {
  std::vector<T> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(field, "expected a nonempty array");
    for (const json& item : v) out.push_back(parse(item));
  } else {
    out.push_back(parse(v));
  }
  return out;
}

}  // namespace

ExperimentConfig ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  ExperimentConfig config;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ConfigError("mode", "expected string");
    config.mode = doc["mode"].get<std::string>();
  }
  std::set<std::string> known = {"mode",        "algorithms", "step_sizes",
                                 "lipschitz",   "diameter",   "initial_point",
                                 "T",           "seed",       "stride",
                                 "output",      "metrics"};
  if (config.mode == "selfplay") {
    known.insert("game");
  } else if (config.mode == "adversarial") {
    known.insert("adversary");
  } else {
    throw ConfigError("mode", "expected 'selfplay' or 'adversarial'");
  }
  RejectUnknownKeys(doc, known, "");

  if (config.mode == "selfplay") {
    if (!doc.contains("game") || !doc["game"].is_object()) {
      throw ConfigError("game", "required object with an 'id'");
    }
    json game = doc["game"];
    if (!game.contains("id") || !game["id"].is_string()) {
      throw ConfigError("game.id", "required string");
    }
    config.game.id = game["id"].get<std::string>();
    game.erase("id");
    config.game.params = game;
  } else {
    if (doc.contains("adversary")) {
      const json& adv = doc["adversary"];
      if (!adv.is_object()) throw ConfigError("adversary", "expected object");
      RejectUnknownKeys(adv, {"kind", "dim", "box_half_width"}, "adversary");
      if (adv.contains("kind")) {
        if (!adv["kind"].is_string()) {
          throw ConfigError("adversary.kind", "expected string");
        }
        config.adversary.kind = adv["kind"].get<std::string>();
      }
      config.adversary.dim =
          static_cast<int>(GetInteger(adv, "dim", 1, "adversary."));
      config.adversary.box_half_width =
          GetNumber(adv, "box_half_width", 1.0, "adversary.");
    }
    const std::string& kind = config.adversary.kind;
    if (kind != "zero" && kind != "appendix_d" && kind != "random") {
      throw ConfigError("adversary.kind",
                        "expected 'zero', 'appendix_d' or 'random'");
    }
    if (config.adversary.dim <= 0) {
      throw ConfigError("adversary.dim", "must be positive");
    }
    if (!(config.adversary.box_half_width > 0.0)) {
      throw ConfigError("adversary.box_half_width", "must be positive");
    }
    if (kind == "appendix_d" && config.adversary.dim != 1) {
      throw ConfigError("adversary.dim", "appendix_d adversary is 1-dim");
    }
  }

  if (doc.contains("algorithms")) {
    config.algorithms = OneOrMany<Algorithm>(
        doc["algorithms"], "algorithms", [](const json& item) {
          if (!item.is_string()) {
            throw ConfigError("algorithms", "expected algorithm tags");
          }
          try {
            return ParseAlgorithm(item.get<std::string>());
          } catch (const InvalidArgumentError& e) {
            throw ConfigError("algorithms", e.what());
          }
        });
  }
  if (doc.contains("step_sizes")) {
    config.step_sizes = OneOrMany<std::optional<double>>(
        doc["step_sizes"], "step_sizes",
        [](const json& item) -> std::optional<double> {
          if (item.is_null()) return std::nullopt;
          if (!item.is_number() || !(item.get<double>() > 0.0)) {
            throw ConfigError("step_sizes", "expected positive numbers");
          }
          return item.get<double>();
        });
  }
  for (const char* key : {"lipschitz", "diameter"}) {
    if (doc.contains(key)) {
      const double v = GetNumber(doc, key, 0.0, "");
      if (!(v > 0.0)) throw ConfigError(key, "must be positive");
      (std::string(key) == "lipschitz" ? config.lipschitz : config.diameter) =
          v;
    }
  }
  if (doc.contains("initial_point")) {
    const json& v = doc["initial_point"];
    if (!v.is_array() || v.empty()) {
      throw ConfigError("initial_point", "expected an array of numbers");
    }
    Vector x(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError("initial_point", "expected an array of numbers");
      }
      x[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    config.initial_point = x;
  }
  const long horizon = GetInteger(doc, "T", config.T, "");
  if (horizon < 2) throw ConfigError("T", "must be >= 2");
  config.T = static_cast<int>(horizon);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw ConfigError("seed", "expected a nonnegative integer");
    }
    if (doc["seed"].get<long long>() < 0) {
      throw ConfigError("seed", "expected a nonnegative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }
  const long stride = GetInteger(doc, "stride", config.stride, "");
  if (stride < 1) throw ConfigError("stride", "must be >= 1");
  config.stride = static_cast<int>(stride);
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) {
      throw ConfigError("output", "expected a path string");
    }
    config.output = doc["output"].get<std::string>();
  }
  if (doc.contains("metrics")) config.metrics = ParseMetrics(doc["metrics"]);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseConfig(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), e.message() + " (in " + path + ")");
  }
}

nlohmann::json ConfigToJson(const ExperimentConfig& config) {
  json doc;
  doc["mode"] = config.mode;
  if (config.mode == "selfplay") {
    json game = config.game.params;
    game["id"] = config.game.id;
    doc["game"] = game;
  } else {
    doc["adversary"] = {{"kind", config.adversary.kind},
                        {"dim", config.adversary.dim},
                        {"box_half_width", config.adversary.box_half_width}};
  }
  json algos = json::array();
  for (Algorithm a : config.algorithms) algos.push_back(AlgorithmTag(a));
  doc["algorithms"] = algos;
  if (!config.step_sizes.empty()) {
    json steps = json::array();
    for (const auto& s : config.step_sizes) {
      steps.push_back(s ? json(*s) : json(nullptr));
    }
    doc["step_sizes"] = steps;
  }
  if (config.lipschitz) doc["lipschitz"] = *config.lipschitz;
  if (config.diameter) doc["diameter"] = *config.diameter;
  if (config.initial_point) {
    doc["initial_point"] = std::vector<double>(
        config.initial_point->data(),
        config.initial_point->data() + config.initial_point->size());
  }
  doc["T"] = config.T;
  doc["seed"] = config.seed;
  doc["stride"] = config.stride;
  if (!config.output.empty()) doc["output"] = config.output;
  if (config.metrics) {
    json m = json::array({"r_tan"});
    if (config.metrics->gap) m.push_back("gap");
    if (config.metrics->tgap) m.push_back("tgap");
    if (config.metrics->potential) m.push_back("potential");
    if (config.metrics->ext_regret) m.push_back("extreg");
    if (config.metrics->dyn_regret) m.push_back("dynreg");
    doc["metrics"] = m;
  }
  return doc;
}

GameOracle MakeGame(const GameSpec& spec, std::uint64_t seed) {
  const json& p = spec.params;
  const std::string where = "game.";
  try {
    if (spec.id == "bilinear") {
      RejectUnknownKeys(p, {"scale", "radius", "dims"}, "game");
      const std::vector<int> dims = GetDims(p, "dims", {1, 1}, where);
      if (dims.size() != 2) throw ConfigError("game.dims", "expected 2 dims");
      return MakeBilinearSaddle(GetNumber(p, "scale", 1.0, where),
                                GetNumber(p, "radius", 1.0, where), dims[0],
                                dims[1]);
    }
    if (spec.id == "appendix_e") {
      RejectUnknownKeys(p, {"n", "box_half_width"}, "game");
      return MakeAppendixEInstance(
          static_cast<int>(GetInteger(p, "n", 100, where)),
          GetNumber(p, "box_half_width", 200.0, where));
    }
    if (spec.id == "appendix_d_toy") {
      RejectUnknownKeys(p, {}, "game");
      return MakeAppendixDToy();
    }
    if (spec.id == "random_linear_monotone") {
      RejectUnknownKeys(p, {"player_dims", "box_half_width", "epsilon",
                            "coupling_scale", "seed"},
                        "game");
      RandomLinearOptions options;
      options.player_dims = GetDims(p, "player_dims", {1, 1}, where);
      if (p.contains("box_half_width") && !p["box_half_width"].is_null()) {
        options.box_half_width = GetNumber(p, "box_half_width", 1.0, where);
      }
      options.epsilon = GetNumber(p, "epsilon", options.epsilon, where);
      options.coupling_scale =
          GetNumber(p, "coupling_scale", options.coupling_scale, where);
      options.seed = static_cast<std::uint64_t>(
          GetInteger(p, "seed", static_cast<long>(seed), where));
      return MakeRandomLinearMonotone(options);
    }
  } catch (const InvalidArgumentError& e) {
    throw ConfigError("game", e.what());
  }
  throw ConfigError("game.id", "unknown game '" + spec.id + "'");
}

}  // namespace aog
