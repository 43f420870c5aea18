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

#include <optional>
#include <utility>

#include "pdcg/algorithms.hpp"
#include "pdcg/core.hpp"
#include "pdcg/problem.hpp"

namespace pdcg {

struct EquivalenceReport {
  long iterations = 0;
  // max_t ||x_t^MD - x_t^GCG||_inf
  double max_x_deviation = 0.0;
  // max_t ||carried_t^MD + A^T y_t^GCG||_inf
  double max_dual_identity_deviation = 0.0;
  // First iteration at which either deviation exceeded the tolerance.
  std::optional<long> first_divergence;
  double tolerance = 0.0;
  bool pass = true;
};

// x0 = (h*)'(-A^T y0) and carried subgradient -A^T y0. Throws
// FeasibilityError when y0 is outside the closure of C.
std::pair<Vector, Vector> init_primal_from_dual(const ProblemInstance& problem, ConstSpan y0);

// Runs mirror descent and generalized conditional gradient in lockstep for
// T iterations from the matched initialization at y0 and compares the
// primal iterates and the identity carried = -A^T y.
EquivalenceReport verify_equivalence(const ProblemInstance& problem, ConstSpan y0,
                                     const StepSchedule& schedule, long iterations,
                                     double tolerance);

// Same, from explicit starting states. The two schedules must agree
// (ConfigError otherwise); line-search steps use the gap of the GCG pair.
EquivalenceReport verify_equivalence(const ProblemInstance& problem, SolverState md_state,
                                     SolverState gcg_state, const StepSchedule& md_schedule,
                                     const StepSchedule& gcg_schedule, long iterations,
                                     double tolerance);

}  // namespace pdcg
