// Copyright 2026 The pdcg Authors
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
#include <limits>
#include <set>

#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

LossKind parse_loss_kind(const std::string& s) {
  if (s == "hinge" || s == "svm") return LossKind::Hinge;
  if (s == "lad") return LossKind::LeastAbsoluteDeviation;
  if (s == "logistic") return LossKind::Logistic;
  if (s == "gauge") return LossKind::DualNormGauge;
  throw ConfigError("unknown loss '" + s + "' (expected hinge, lad, logistic or gauge)");
}

RegularizerKind parse_regularizer_kind(const std::string& s) {
  if (s == "squared_l2") return RegularizerKind::SquaredL2;
  if (s == "squared_l2_box") return RegularizerKind::SquaredL2Box;
  if (s == "entropy") return RegularizerKind::NegativeEntropySimplex;
  throw ConfigError("unknown regularizer '" + s +
                    "' (expected squared_l2, squared_l2_box or entropy)");
}

template <typename T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_size(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_double(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("config key '" + key + "' must be a number");
  }
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

Json double_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "loss",      "regularizer",   "n",           "p",           "mu",
      "scale",     "gauge_radius",  "gauge_penalty", "box_lower", "box_upper",
      "seed",      "algorithm",     "schedule",    "max_iters",   "gap_tol",
      "format",    "output",        "with_reference", "reference_tol", "reference_cap"};
  return keys;
}

}  // namespace

std::string to_string(TraceFormat f) { return f == TraceFormat::Csv ? "csv" : "json"; }

TraceFormat parse_trace_format(const std::string& s) {
  if (s == "csv") return TraceFormat::Csv;
  if (s == "json") return TraceFormat::Json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["loss"] = to_string(c.problem.loss);
  j["regularizer"] = to_string(c.problem.regularizer);
  j["n"] = c.problem.n;
  j["p"] = c.problem.p;
  j["mu"] = c.problem.mu;
  j["scale"] = c.problem.scale ? Json(*c.problem.scale) : Json(nullptr);
  j["gauge_radius"] = c.problem.gauge_radius;
  j["gauge_penalty"] = c.problem.gauge_penalty;
  j["box_lower"] = c.problem.box_lower;
  j["box_upper"] = c.problem.box_upper;
  j["seed"] = c.seed;
  j["algorithm"] = to_string(c.algorithm);
  j["schedule"] = to_string(c.schedule);
  j["max_iters"] = c.max_iters;
  j["gap_tol"] = double_to_json(c.gap_tol);
  j["format"] = to_string(c.format);
  j["output"] = c.output;
  j["with_reference"] = c.with_reference;
  j["reference_tol"] = double_to_json(c.reference_tol);
  j["reference_cap"] = c.reference_cap;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  ProblemSpec& s = c.problem;
  if (j.contains("loss")) s.loss = parse_loss_kind(get_as<std::string>(j, "loss"));
  if (j.contains("regularizer")) {
    s.regularizer = parse_regularizer_kind(get_as<std::string>(j, "regularizer"));
  }
  if (j.contains("n")) s.n = get_size(j, "n");
  if (j.contains("p")) s.p = get_size(j, "p");
  if (j.contains("mu")) s.mu = get_double(j, "mu");
  if (j.contains("scale") && !j.at("scale").is_null()) s.scale = get_double(j, "scale");
  if (j.contains("gauge_radius")) s.gauge_radius = get_double(j, "gauge_radius");
  if (j.contains("gauge_penalty")) s.gauge_penalty = get_double(j, "gauge_penalty");
  if (j.contains("box_lower")) s.box_lower = get_double(j, "box_lower");
  if (j.contains("box_upper")) s.box_upper = get_double(j, "box_upper");
  if (j.contains("seed")) {
    const Json& v = j.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("config key 'seed' must be an unsigned integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  if (j.contains("algorithm")) c.algorithm = parse_algorithm(get_as<std::string>(j, "algorithm"));
  if (j.contains("schedule")) c.schedule = parse_schedule_kind(get_as<std::string>(j, "schedule"));
  if (j.contains("max_iters")) c.max_iters = static_cast<long>(get_size(j, "max_iters"));
  if (j.contains("gap_tol")) c.gap_tol = get_double(j, "gap_tol");
  if (j.contains("format")) c.format = parse_trace_format(get_as<std::string>(j, "format"));
  if (j.contains("output")) c.output = get_as<std::string>(j, "output");
  if (j.contains("with_reference")) c.with_reference = get_as<bool>(j, "with_reference");
  if (j.contains("reference_tol")) c.reference_tol = get_double(j, "reference_tol");
  if (j.contains("reference_cap")) c.reference_cap = static_cast<long>(get_size(j, "reference_cap"));
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file '" + path + "'");
  out << config_to_json(config).dump(2) << '\n';
  if (!out) throw IoError("error writing config file '" + path + "'");
}

}  // namespace pdcg
