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
#include <cstdlib>
#include <filesystem>
#include <string>

#include <omp.h>

#include "pdcg/harness.hpp"

namespace pdcg {

StepSchedule make_schedule(ScheduleKind kind, const ProblemInstance& problem,
                           const GeometryConstants& geometry) {
  switch (kind) {
    case ScheduleKind::TwoOverTPlusOne:
      return StepSchedule::two_over_t_plus_one();
    case ScheduleKind::OneOverT:
      return StepSchedule::one_over_t();
    case ScheduleKind::LineSearch:
      return StepSchedule::line_search(problem.regularizer.modulus(), geometry.r2_primal);
    case ScheduleKind::SqrtDecay:
      if (!geometry.delta2) throw ConfigError("sqrt_decay needs a compact regularizer domain");
      return StepSchedule::sqrt_decay(std::sqrt(*geometry.delta2), std::sqrt(geometry.r2_origin));
  }
  throw ConfigError("unknown schedule");
}

Experiment run_experiment(const ExperimentConfig& config) {
  GeneratedProblem generated = generate_problem_with_truth(config.problem, config.seed);
  const ProblemInstance& problem = generated.instance;
  const GeometryConstants geometry = geometry_constants(problem);
  const StepSchedule schedule = make_schedule(config.schedule, problem, geometry);

  RunOptions options;
  ReferencePoint point;
  std::optional<ReferenceSolution> reference;
  if (config.with_reference && config.algorithm != Algorithm::CompactMirrorDescent) {
    reference = reference_solution(problem, config.reference_tol, config.reference_cap);
    point = reference->as_reference_point();
    options.reference = &point;
  }
  RunResult result =
      run(problem, config.algorithm, schedule, {config.max_iters, config.gap_tol}, options);
  return {std::move(generated), geometry, schedule, std::move(reference), std::move(result)};
}

int sweep_thread_count() {
  if (const char* env = std::getenv("PDCG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& base,
                                 const std::vector<ScheduleKind>& schedules,
                                 const std::vector<std::uint64_t>& seeds,
                                 const std::string& out_dir, int threads) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create sweep directory '" + out_dir + "': " + ec.message());

  std::vector<SweepCell> cells;
  for (ScheduleKind kind : schedules) {
    for (std::uint64_t seed : seeds) {
      SweepCell cell;
      cell.config = base;
      cell.config.schedule = kind;
      cell.config.seed = seed;
      cell.path = (std::filesystem::path(out_dir) /
                   ("cell_" + to_string(kind) + "_seed" + std::to_string(seed) + "." +
                    to_string(base.format)))
                      .string();
      cell.config.output = cell.path;
      cells.push_back(std::move(cell));
    }
  }

  const int workers = threads > 0 ? threads : sweep_thread_count();
  const auto count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long k = 0; k < count; ++k) {
    SweepCell& cell = cells[static_cast<std::size_t>(k)];
    try {
      const Experiment e = run_experiment(cell.config);
      cell.reason = e.result.reason;
      if (e.result.error) cell.error = e.result.error;
      emit_trace(e.result, cell.config.format, cell.path, {cell.config, e.geometry});
    } catch (const std::exception& ex) {
      cell.reason = Termination::Aborted;
      cell.error = ex.what();
    }
  }
  return cells;
}

}  // namespace pdcg
