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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdcg/algorithms.hpp"
#include "pdcg/certificates.hpp"
#include "pdcg/equivalence.hpp"
#include "pdcg/problem.hpp"

namespace pdcg {

using Json = nlohmann::json;

enum class TraceFormat { Csv, Json };
std::string to_string(TraceFormat f);
TraceFormat parse_trace_format(const std::string& s);

struct ProblemSpec {
  LossKind loss = LossKind::Hinge;
  RegularizerKind regularizer = RegularizerKind::SquaredL2;
  std::size_t n = 100;
  std::size_t p = 20;
  double mu = 1.0;
  std::optional<double> scale;  // default 1
  double gauge_radius = 1.0;
  double gauge_penalty = 0.0;
  double box_lower = -1.0;
  double box_upper = 1.0;

  double effective_scale() const { return scale ? *scale : 1.0; }
  bool operator==(const ProblemSpec&) const = default;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::MirrorDescent;
  ScheduleKind schedule = ScheduleKind::TwoOverTPlusOne;
  long max_iters = 1000;
  double gap_tol = 0.0;
  TraceFormat format = TraceFormat::Csv;
  std::string output;  // empty: stdout
  bool with_reference = false;
  double reference_tol = 1e-9;
  long reference_cap = 1000000;

  bool operator==(const ExperimentConfig&) const = default;
};

// Flat snake_case JSON. Unknown keys and ill-typed values are ConfigErrors;
// missing keys keep their defaults.
Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

struct GeneratedProblem {
  ProblemInstance instance;
  Vector x_true;                      // LAD only
  std::vector<std::size_t> outliers;  // LAD only
  Vector outlier_values;              // LAD only
};

// Deterministic synthetic instance. Throws ConfigError on an invalid spec.
GeneratedProblem generate_problem_with_truth(const ProblemSpec& spec, std::uint64_t seed);
ProblemInstance generate_problem(const ProblemSpec& spec, std::uint64_t seed);

struct ReferenceSolution {
  Vector x_star;
  Vector y_star;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double certified_gap = 0.0;
  long iterations = 0;
  bool certified = false;

  ReferencePoint as_reference_point() const;
};

// High-accuracy primal-dual pair certified by its duality gap. Separable
// losses use exact dual coordinate ascent; the gauge loss uses accelerated
// proximal gradient on the dual. A budget overrun returns the best pair
// found, marked uncertified.
ReferenceSolution reference_solution(const ProblemInstance& problem, double tol = 1e-9,
                                     long cap = 1000000);

// Schedule for a configured run, with the geometry constants it needs.
StepSchedule make_schedule(ScheduleKind kind, const ProblemInstance& problem,
                           const GeometryConstants& geometry);

struct TraceHeader {
  std::optional<ExperimentConfig> config;
  std::optional<GeometryConstants> geometry;
};

void write_trace_csv(const RunResult& result, std::ostream& out);
Json trace_to_json(const RunResult& result, const TraceHeader& header = {});
std::vector<TraceRecord> trace_from_json(const Json& j);

// Writes the trace to path ("-" or empty: stdout). IoError when the path
// cannot be written.
void emit_trace(const RunResult& result, TraceFormat format, const std::string& path,
                const TraceHeader& header = {});

Json equivalence_report_to_json(const EquivalenceReport& report);
Json bound_report_to_json(const BoundReport& report, const GeometryConstants& geometry,
                          double mu);

// Experiment pipeline shared by the CLI and the sweep.
struct Experiment {
  GeneratedProblem generated;
  GeometryConstants geometry;
  StepSchedule schedule;
  std::optional<ReferenceSolution> reference;
  RunResult result;
};
Experiment run_experiment(const ExperimentConfig& config);

// Thread cap for sweeps: PDCG_THREADS when set to a positive integer,
// otherwise the OpenMP default.
int sweep_thread_count();

struct SweepCell {
  ExperimentConfig config;
  std::string path;
  Termination reason = Termination::Budget;
  std::optional<std::string> error;
};

// One run per (schedule, seed) cell, written to its own file under out_dir.
// Cells run concurrently on up to `threads` workers (<= 0: sweep_thread_count()).
std::vector<SweepCell> run_sweep(const ExperimentConfig& base,
                                 const std::vector<ScheduleKind>& schedules,
                                 const std::vector<std::uint64_t>& seeds,
                                 const std::string& out_dir, int threads = 0);

// Entry point of the pdcg executable. Exit codes: 0 success, 1 a failed
// check or aborted run, 2 configuration / usage / I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdcg
