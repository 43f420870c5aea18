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

#include "pdcg/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdcg/certificates.hpp"

namespace pdcg {
namespace {

// Folds x_{t-1} and the oracle output into the running averages for the
// step that produces iterate t.
void update_averages(SolverState& next, ConstSpan x_prev, ConstSpan oracle) {
  const auto t = static_cast<double>(next.t);
  const double w = 2.0 / (t + 1.0);
  const double u = 1.0 / t;
  auto fold = [](Vector& avg, ConstSpan v, double weight) {
    if (avg.size() != v.size()) avg.assign(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) avg[i] = (1.0 - weight) * avg[i] + weight * v[i];
  };
  fold(next.weighted_x_avg, x_prev, w);
  fold(next.weighted_y_avg, oracle, w);
  fold(next.plain_x_avg, x_prev, u);
  fold(next.plain_y_avg, oracle, u);
}

Vector default_compact_start(const Regularizer& reg) {
  const std::size_t p = reg.dim();
  if (reg.kind() == RegularizerKind::NegativeEntropySimplex) {
    return Vector(p, 1.0 / static_cast<double>(p));
  }
  Vector x(p);
  for (std::size_t i = 0; i < p; ++i) x[i] = 0.5 * (reg.lower()[i] + reg.upper()[i]);
  return x;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MirrorDescent: return "md";
    case Algorithm::ConditionalGradient: return "gcg";
    case Algorithm::CompactMirrorDescent: return "ns_md";
  }
  return "unknown";
}

std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::TwoOverTPlusOne: return "two_over_t_plus_one";
    case ScheduleKind::OneOverT: return "one_over_t";
    case ScheduleKind::LineSearch: return "line_search";
    case ScheduleKind::SqrtDecay: return "sqrt_decay";
  }
  return "unknown";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Budget: return "budget";
    case Termination::GapTolerance: return "gap_tolerance";
    case Termination::Aborted: return "aborted";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "md") return Algorithm::MirrorDescent;
  if (s == "gcg") return Algorithm::ConditionalGradient;
  if (s == "ns_md") return Algorithm::CompactMirrorDescent;
  throw ConfigError("unknown algorithm '" + s + "' (expected md, gcg or ns_md)");
}

ScheduleKind parse_schedule_kind(const std::string& s) {
  if (s == "two_over_t_plus_one") return ScheduleKind::TwoOverTPlusOne;
  if (s == "one_over_t") return ScheduleKind::OneOverT;
  if (s == "line_search") return ScheduleKind::LineSearch;
  if (s == "sqrt_decay") return ScheduleKind::SqrtDecay;
  throw ConfigError("unknown schedule '" + s +
                    "' (expected two_over_t_plus_one, one_over_t, line_search or sqrt_decay)");
}

double step_size(const StepSchedule& schedule, long t, std::optional<double> current_gap) {
  if (t < 1) throw ArgumentError("step_size: iteration index must be >= 1");
  const auto tt = static_cast<double>(t);
  switch (schedule.kind) {
    case ScheduleKind::TwoOverTPlusOne:
      return 2.0 / (tt + 1.0);
    case ScheduleKind::OneOverT:
      return 1.0 / tt;
    case ScheduleKind::LineSearch: {
      if (!current_gap) throw ArgumentError("step_size: line search needs the current gap");
      const double gap = std::max(*current_gap, 0.0);
      if (!(schedule.r2 > 0.0)) return gap > 0.0 ? 1.0 : 0.0;
      return std::min(schedule.mu / schedule.r2 * gap, 1.0);
    }
    case ScheduleKind::SqrtDecay:
      if (!(schedule.radius > 0.0)) return 1.0;
      return std::clamp(schedule.delta / (schedule.radius * std::sqrt(tt)), 0.0, 1.0);
  }
  return 0.0;
}

SolverState initial_state(const ProblemInstance& problem, Algorithm algorithm,
                          const InitOptions& init) {
  SolverState s;
  if (algorithm == Algorithm::CompactMirrorDescent) {
    const Regularizer& reg = problem.regularizer;
    if (!reg.is_compact()) throw ConfigError("compact mirror descent needs a compact domain");
    s.x = init.x_init ? *init.x_init : default_compact_start(reg);
    if (!reg.contains(s.x)) throw FeasibilityError("initial point outside K");
    if (reg.kind() == RegularizerKind::NegativeEntropySimplex &&
        std::any_of(s.x.begin(), s.x.end(), [](double v) { return !(v > 0.0); })) {
      throw FeasibilityError("initial point must be interior to the simplex");
    }
    s.y.assign(problem.n(), 0.0);
  } else {
    if (init.y0) {
      s.y = *init.y0;
    } else if (init.x_init) {
      s.y = problem.loss.subgradient(pdcg::apply(problem.op, *init.x_init));
    } else {
      s.y.assign(problem.n(), 0.0);
    }
    if (s.y.size() != problem.n()) throw DimensionError("initial dual point has the wrong length");
    if (!problem.loss.dual_contains(s.y)) throw FeasibilityError("initial dual point outside C");
    s.carried_h_sub = scaled(-1.0, adjoint_apply(problem.op, s.y));
    s.x = problem.regularizer.conj_grad(s.carried_h_sub);
  }
  s.weighted_x_avg = s.plain_x_avg = s.x;
  s.weighted_y_avg = s.plain_y_avg = s.y;
  return s;
}

SolverState md_step(const ProblemInstance& problem, const SolverState& state, double rho) {
  const Vector oracle = problem.loss.subgradient(pdcg::apply(problem.op, state.x));
  const Vector aty = adjoint_apply(problem.op, oracle);

  SolverState next;
  next.t = state.t + 1;
  next.carried_h_sub = combine(1.0 - rho, state.carried_h_sub, -rho, aty);
  next.x = problem.regularizer.conj_grad(next.carried_h_sub);
  next.y = combine(1.0 - rho, state.y, rho, oracle);
  next.weighted_x_avg = state.weighted_x_avg;
  next.weighted_y_avg = state.weighted_y_avg;
  next.plain_x_avg = state.plain_x_avg;
  next.plain_y_avg = state.plain_y_avg;
  update_averages(next, state.x, oracle);
  next.last_oracle = oracle;
  return next;
}

SolverState gcg_step(const ProblemInstance& problem, const SolverState& state, double rho) {
  const Vector oracle = problem.loss.subgradient(pdcg::apply(problem.op, state.x));

  SolverState next;
  next.t = state.t + 1;
  next.y = combine(1.0 - rho, state.y, rho, oracle);
  next.carried_h_sub = scaled(-1.0, adjoint_apply(problem.op, next.y));
  next.x = problem.regularizer.conj_grad(next.carried_h_sub);
  next.weighted_x_avg = state.weighted_x_avg;
  next.weighted_y_avg = state.weighted_y_avg;
  next.plain_x_avg = state.plain_x_avg;
  next.plain_y_avg = state.plain_y_avg;
  update_averages(next, state.x, oracle);
  next.last_oracle = oracle;
  return next;
}

SolverState compact_md_step(const ProblemInstance& problem, const SolverState& state,
                            double rho) {
  const Regularizer& reg = problem.regularizer;
  const Vector oracle = problem.loss.subgradient(pdcg::apply(problem.op, state.x));
  const Vector aty = adjoint_apply(problem.op, oracle);

  SolverState next;
  next.t = state.t + 1;
  next.x = state.x;
  if (rho != 0.0) {
    switch (reg.kind()) {
      case RegularizerKind::NegativeEntropySimplex: {
        // x_t proportional to x_{t-1} exp(-rho A^T y), in the log domain.
        Vector logits(reg.dim());
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < reg.dim(); ++i) {
          logits[i] = state.x[i] > 0.0 ? std::log(state.x[i]) - rho * aty[i]
                                       : -std::numeric_limits<double>::infinity();
          top = std::max(top, logits[i]);
        }
        double total = 0.0;
        for (std::size_t i = 0; i < reg.dim(); ++i) {
          next.x[i] = std::exp(logits[i] - top);
          total += next.x[i];
        }
        for (double& v : next.x) v /= total;
        break;
      }
      case RegularizerKind::SquaredL2Box:
        for (std::size_t i = 0; i < reg.dim(); ++i) {
          next.x[i] = std::clamp(state.x[i] - rho / reg.modulus() * aty[i], reg.lower()[i],
                                 reg.upper()[i]);
        }
        break;
      case RegularizerKind::SquaredL2:
        throw ConfigError("compact mirror descent needs a compact domain");
    }
  }
  next.y = oracle;
  next.weighted_x_avg = state.weighted_x_avg;
  next.weighted_y_avg = state.weighted_y_avg;
  next.plain_x_avg = state.plain_x_avg;
  next.plain_y_avg = state.plain_y_avg;
  update_averages(next, state.x, oracle);
  next.last_oracle = oracle;
  return next;
}

RunResult run(const ProblemInstance& problem, Algorithm algorithm, const StepSchedule& schedule,
              const StopRule& stop, const RunOptions& options) {
  const bool compact = algorithm == Algorithm::CompactMirrorDescent;
  validate_instance(problem, !compact);
  if (compact && schedule.kind == ScheduleKind::LineSearch) {
    throw ConfigError("line search is defined for the strongly convex recursions only");
  }

  RunResult result;
  result.algorithm = algorithm;
  result.schedule = schedule;
  SolverState state = options.warm_start ? *options.warm_start
                                         : initial_state(problem, algorithm, options.init);
  if (options.warm_start && algorithm == Algorithm::MirrorDescent) {
    result.carried_in_dual_image = false;
  }

  const ObjectiveForm form = compact ? ObjectiveForm::Constrained : ObjectiveForm::Regularized;
  const bool weighted = schedule.kind == ScheduleKind::TwoOverTPlusOne;
  const ReferencePoint* ref = options.reference;

  double cur_primal = primal_objective(problem, state.x, form);
  double cur_dual = compact ? 0.0 : dual_objective(problem, state.y, form);

  for (long t = 1; t <= stop.max_iters; ++t) {
    try {
      TraceRecord rec;
      rec.t = t;
      SolverState next;
      double next_dual = 0.0;
      if (compact) {
        rec.rho = step_size(schedule, t);
        next = compact_md_step(problem, state, rec.rho);
        rec.primal = cur_primal;
        rec.dual = dual_objective(problem, next.last_oracle, form);
      } else {
        const double gap = cur_primal - cur_dual;
        if (gap < -kGapClampTol) {
          throw InconsistencyError("negative duality gap " + std::to_string(gap) +
                                   " at iteration " + std::to_string(t));
        }
        rec.rho = step_size(schedule, t, gap);
        next = algorithm == Algorithm::MirrorDescent ? md_step(problem, state, rec.rho)
                                                     : gcg_step(problem, state, rec.rho);
        rec.primal = cur_primal;
        rec.dual = cur_dual;
        next_dual = dual_objective(problem, next.y, form);
      }
      rec.gap = rec.primal - rec.dual;

      const Vector& avg_x = weighted ? next.weighted_x_avg : next.plain_x_avg;
      const Vector& avg_y = weighted ? next.weighted_y_avg : next.plain_y_avg;
      rec.avg_primal = primal_objective(problem, avg_x, form);
      rec.avg_dual = dual_objective(problem, avg_y, form);

      if (ref != nullptr && !compact) {
        rec.dual_subopt = ref->dual_value - next_dual;
        rec.bregman_ref = problem.regularizer.bregman_with(ref->x_star, next.x, next.carried_h_sub);
      }

      state = std::move(next);
      cur_primal = primal_objective(problem, state.x, form);
      cur_dual = next_dual;
      result.trace.push_back(rec);
      if (options.on_step) options.on_step(state);

      const double certificate = compact ? rec.avg_primal - rec.avg_dual : rec.gap;
      if (certificate <= stop.gap_tol) {
        result.reason = Termination::GapTolerance;
        break;
      }
    } catch (const Error& e) {
      result.reason = Termination::Aborted;
      result.error = e.what();
      break;
    }
  }
  if (!compact && result.reason != Termination::Aborted) result.final_gap = cur_primal - cur_dual;
  result.final_state = std::move(state);
  return result;
}

}  // namespace pdcg
