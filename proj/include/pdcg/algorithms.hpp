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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdcg/core.hpp"
#include "pdcg/problem.hpp"

namespace pdcg {

enum class Algorithm {
  MirrorDescent,        // strongly convex h, carried-subgradient recursion
  ConditionalGradient,  // generalized conditional gradient on the dual
  CompactMirrorDescent  // Bregman-proximal steps over a compact K, no h in the objective
};

enum class ScheduleKind { TwoOverTPlusOne, OneOverT, LineSearch, SqrtDecay };

std::string to_string(Algorithm a);
std::string to_string(ScheduleKind k);
Algorithm parse_algorithm(const std::string& s);
ScheduleKind parse_schedule_kind(const std::string& s);

struct StepSchedule {
  ScheduleKind kind = ScheduleKind::TwoOverTPlusOne;
  double mu = 0.0;      // LineSearch
  double r2 = 0.0;      // LineSearch: squared diameter of A^T C
  double delta = 0.0;   // SqrtDecay
  double radius = 0.0;  // SqrtDecay: max_{y in C} ||A^T y||

  static StepSchedule two_over_t_plus_one() { return {ScheduleKind::TwoOverTPlusOne}; }
  static StepSchedule one_over_t() { return {ScheduleKind::OneOverT}; }
  static StepSchedule line_search(double mu, double r2) {
    return {ScheduleKind::LineSearch, mu, r2};
  }
  static StepSchedule sqrt_decay(double delta, double radius) {
    return {ScheduleKind::SqrtDecay, 0.0, 0.0, delta, radius};
  }

  bool operator==(const StepSchedule&) const = default;
};

// rho_t in [0, 1]. LineSearch needs the current gap; ArgumentError otherwise.
double step_size(const StepSchedule& schedule, long t, std::optional<double> current_gap = {});

struct SolverState {
  long t = 0;
  Vector x;              // primal iterate x_t
  Vector carried_h_sub;  // element of dh(x_t) produced by the recursion
  Vector y;              // dual iterate y_t
  Vector last_oracle;    // f_subgradient(A x_{t-1}) from the latest step
  // 2/(t(t+1)) sum_u u x_{u-1}  and the same for oracle outputs.
  Vector weighted_x_avg;
  Vector weighted_y_avg;
  // (1/t) sum_u x_{u-1}  and the same for oracle outputs.
  Vector plain_x_avg;
  Vector plain_y_avg;
};

struct InitOptions {
  // Starting dual point (MD / GCG). Default: f_subgradient(A x_init) when
  // x_init is given, otherwise zero (which lies in C for every loss here).
  std::optional<Vector> y0;
  // MD / GCG: primal point used to derive y0. Compact MD: the starting
  // point x_0 (default: uniform on the simplex, box midpoint).
  std::optional<Vector> x_init;
};

// MD and GCG start from x_0 = (h*)'(-A^T y_0) with carried subgradient
// -A^T y_0; compact MD starts from x_0 directly.
SolverState initial_state(const ProblemInstance& problem, Algorithm algorithm,
                          const InitOptions& init = {});

// One mirror descent step. The subgradient of h at x_{t-1} is always the
// carried one, never recomputed from x_{t-1}.
SolverState md_step(const ProblemInstance& problem, const SolverState& state, double rho);

// One generalized conditional gradient step. Expects state.x to equal
// (h*)'(-A^T state.y), which initial_state and this function maintain.
SolverState gcg_step(const ProblemInstance& problem, const SolverState& state, double rho);

// One Bregman-proximal mirror descent step over compact K (closed form for
// the simplex/entropy and box/quadratic geometries).
SolverState compact_md_step(const ProblemInstance& problem, const SolverState& state, double rho);

struct StopRule {
  long max_iters = 1000;
  double gap_tol = 0.0;
};

enum class Termination { Budget, GapTolerance, Aborted };
std::string to_string(Termination t);

// Known (approximately) optimal pair used to fill the suboptimality columns.
struct ReferencePoint {
  Vector x_star;
  Vector y_star;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double tolerance = 0.0;  // certified gap of the pair
};

struct RunResult {
  std::vector<TraceRecord> trace;
  SolverState final_state;
  Algorithm algorithm = Algorithm::MirrorDescent;
  StepSchedule schedule;
  Termination reason = Termination::Budget;
  std::optional<std::string> error;
  // gap(x_T, y_T) of the final pair (MD / GCG), which no trace row holds.
  std::optional<double> final_gap;
  // False when MD was warm-started with a carried subgradient that is not
  // known to lie in -A^T C; strongly convex certificates are void then.
  bool carried_in_dual_image = true;
};

struct RunOptions {
  InitOptions init;
  std::optional<SolverState> warm_start;
  const ReferencePoint* reference = nullptr;
  std::function<void(const SolverState&)> on_step;
};

RunResult run(const ProblemInstance& problem, Algorithm algorithm, const StepSchedule& schedule,
              const StopRule& stop, const RunOptions& options = {});

}  // namespace pdcg
