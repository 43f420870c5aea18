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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no non-finite numbers; they travel as strings.
Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_num(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("trace value '" + s + "' is not a number");
  }
  return j.get<double>();
}

Json optional_num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

Json geometry_to_json(const GeometryConstants& g) {
  Json j;
  j["r2_primal"] = num(g.r2_primal);
  j["r2_origin"] = num(g.r2_origin);
  j["delta2"] = optional_num(g.delta2);
  j["r2_mode"] = g.mode == R2Mode::ExactVertex ? "exact_vertex" : "column_norm_bound";
  return j;
}

}  // namespace

void write_trace_csv(const RunResult& result, std::ostream& out) {
  out << "t,rho,primal,dual,gap,avg_primal,dual_subopt,bregman_ref\n";
  for (const TraceRecord& r : result.trace) {
    out << r.t << ',' << fmt17(r.rho) << ',' << fmt17(r.primal) << ',' << fmt17(r.dual) << ','
        << fmt17(r.gap) << ',' << fmt17(r.avg_primal) << ',';
    if (r.dual_subopt) out << fmt17(*r.dual_subopt);
    out << ',';
    if (r.bregman_ref) out << fmt17(*r.bregman_ref);
    out << '\n';
  }
}

Json trace_to_json(const RunResult& result, const TraceHeader& header) {
  Json head;
  head["algorithm"] = to_string(result.algorithm);
  head["schedule"] = to_string(result.schedule.kind);
  head["termination"] = to_string(result.reason);
  head["error"] = result.error ? Json(*result.error) : Json(nullptr);
  head["iterations"] = result.trace.size();
  head["config"] = header.config ? config_to_json(*header.config) : Json(nullptr);
  head["geometry"] = header.geometry ? geometry_to_json(*header.geometry) : Json(nullptr);

  Json records = Json::array();
  for (const TraceRecord& r : result.trace) {
    Json rec;
    rec["t"] = r.t;
    rec["rho"] = num(r.rho);
    rec["primal"] = num(r.primal);
    rec["dual"] = num(r.dual);
    rec["gap"] = num(r.gap);
    rec["avg_primal"] = num(r.avg_primal);
    rec["avg_dual"] = num(r.avg_dual);
    rec["dual_subopt"] = optional_num(r.dual_subopt);
    rec["bregman_ref"] = optional_num(r.bregman_ref);
    records.push_back(std::move(rec));
  }
  return Json{{"header", std::move(head)}, {"records", std::move(records)}};
}

std::vector<TraceRecord> trace_from_json(const Json& j) {
  std::vector<TraceRecord> out;
  try {
    for (const Json& rec : j.at("records")) {
      TraceRecord r;
      r.t = rec.at("t").get<long>();
      r.rho = from_num(rec.at("rho"));
      r.primal = from_num(rec.at("primal"));
      r.dual = from_num(rec.at("dual"));
      r.gap = from_num(rec.at("gap"));
      r.avg_primal = from_num(rec.at("avg_primal"));
      if (rec.contains("avg_dual")) r.avg_dual = from_num(rec.at("avg_dual"));
      if (!rec.at("dual_subopt").is_null()) r.dual_subopt = from_num(rec.at("dual_subopt"));
      if (!rec.at("bregman_ref").is_null()) r.bregman_ref = from_num(rec.at("bregman_ref"));
      out.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed trace JSON: ") + e.what());
  }
  return out;
}

void emit_trace(const RunResult& result, TraceFormat format, const std::string& path,
                const TraceHeader& header) {
  auto write = [&](std::ostream& out) {
    if (format == TraceFormat::Csv) {
      write_trace_csv(result, out);
    } else {
      out << trace_to_json(result, header).dump(1) << '\n';
    }
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace file '" + path + "'");
  write(out);
  out.flush();
  if (!out) throw IoError("error writing trace file '" + path + "'");
}

Json equivalence_report_to_json(const EquivalenceReport& r) {
  Json j;
  j["iterations"] = r.iterations;
  j["max_x_deviation"] = num(r.max_x_deviation);
  j["max_dual_identity_deviation"] = num(r.max_dual_identity_deviation);
  j["first_divergence"] = r.first_divergence ? Json(*r.first_divergence) : Json(nullptr);
  j["tolerance"] = num(r.tolerance);
  j["pass"] = r.pass;
  return j;
}

Json bound_report_to_json(const BoundReport& r, const GeometryConstants& geometry, double mu) {
  Json j;
  j["bound"] = to_string(r.which);
  j["pass"] = r.pass;
  j["checked_iterations"] = r.iterations.size();
  j["worst_iteration"] = r.worst_iteration ? Json(*r.worst_iteration) : Json(nullptr);
  j["worst_margin"] = num(r.worst_margin);
  j["note"] = r.note;
  j["mu"] = num(mu);
  j["geometry"] = geometry_to_json(geometry);
  Json margins = Json::array();
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    margins.push_back({{"t", r.iterations[k]}, {"margin", num(r.margins[k])}});
  }
  j["margins"] = std::move(margins);
  return j;
}

}  // namespace pdcg
