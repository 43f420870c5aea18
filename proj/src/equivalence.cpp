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

#include "pdcg/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "pdcg/certificates.hpp"

namespace pdcg {

std::pair<Vector, Vector> init_primal_from_dual(const ProblemInstance& problem, ConstSpan y0) {
  if (y0.size() != problem.n()) throw DimensionError("init_primal_from_dual: y0 has the wrong length");
  if (!problem.loss.dual_contains(y0)) throw FeasibilityError("init_primal_from_dual: y0 outside C");
  Vector carried = scaled(-1.0, adjoint_apply(problem.op, y0));
  Vector x0 = problem.regularizer.conj_grad(carried);
  return {std::move(x0), std::move(carried)};
}

EquivalenceReport verify_equivalence(const ProblemInstance& problem, ConstSpan y0,
                                     const StepSchedule& schedule, long iterations,
                                     double tolerance) {
  validate_instance(problem);
  InitOptions init;
  init.y0 = Vector(y0.begin(), y0.end());
  SolverState md = initial_state(problem, Algorithm::MirrorDescent, init);
  SolverState gcg = initial_state(problem, Algorithm::ConditionalGradient, init);
  return verify_equivalence(problem, std::move(md), std::move(gcg), schedule, schedule, iterations,
                            tolerance);
}

EquivalenceReport verify_equivalence(const ProblemInstance& problem, SolverState md_state,
                                     SolverState gcg_state, const StepSchedule& md_schedule,
                                     const StepSchedule& gcg_schedule, long iterations,
                                     double tolerance) {
  if (!(md_schedule == gcg_schedule)) {
    throw ConfigError("verify_equivalence: the two recursions must share one schedule");
  }
  if (md_schedule.kind == ScheduleKind::SqrtDecay) {
    throw ConfigError("verify_equivalence: sqrt decay is not a strongly convex schedule");
  }
  if (iterations < 0) throw ArgumentError("verify_equivalence: negative iteration count");
  validate_instance(problem);

  EquivalenceReport report;
  report.tolerance = tolerance;
  for (long t = 1; t <= iterations; ++t) {
    std::optional<double> gap;
    if (md_schedule.kind == ScheduleKind::LineSearch) {
      gap = primal_objective(problem, gcg_state.x) - dual_objective(problem, gcg_state.y);
    }
    const double rho = step_size(md_schedule, t, gap);
    md_state = md_step(problem, md_state, rho);
    gcg_state = gcg_step(problem, gcg_state, rho);

    const double dx = max_abs_diff(md_state.x, gcg_state.x);
    const Vector aty = adjoint_apply(problem.op, gcg_state.y);
    double di = 0.0;
    for (std::size_t j = 0; j < aty.size(); ++j) {
      di = std::max(di, std::abs(md_state.carried_h_sub[j] + aty[j]));
    }
    report.iterations = t;
    report.max_x_deviation = std::max(report.max_x_deviation, dx);
    report.max_dual_identity_deviation = std::max(report.max_dual_identity_deviation, di);
    if (!report.first_divergence && (dx > tolerance || di > tolerance)) {
      report.first_divergence = t;
    }
  }
  report.pass = report.max_x_deviation <= tolerance && report.max_dual_identity_deviation <= tolerance;
  return report;
}

}  // namespace pdcg
