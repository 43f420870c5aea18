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

#include "pdcg/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdcg/kernels.hpp"

namespace pdcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool uses_strongly_convex_recursion(Algorithm a) {
  return a == Algorithm::MirrorDescent || a == Algorithm::ConditionalGradient;
}

}  // namespace

double primal_objective(const ProblemInstance& problem, ConstSpan x, ObjectiveForm form) {
  const double h = form == ObjectiveForm::Regularized
                       ? problem.regularizer.value(x)
                       : (problem.regularizer.contains(x) ? 0.0 : kInf);
  if (!std::isfinite(h)) return kInf;
  return h + problem.loss.value(pdcg::apply(problem.op, x));
}

double dual_objective(const ProblemInstance& problem, ConstSpan y, ObjectiveForm form) {
  const double fc = problem.loss.conj_value(y);
  if (!std::isfinite(fc)) return -kInf;
  const Vector z = scaled(-1.0, adjoint_apply(problem.op, y));
  const double hc = form == ObjectiveForm::Regularized ? problem.regularizer.conj_value(z)
                                                       : problem.regularizer.support(z);
  return -hc - fc;
}

double duality_gap(const ProblemInstance& problem, ConstSpan x, ConstSpan y, ObjectiveForm form) {
  const double gap = primal_objective(problem, x, form) - dual_objective(problem, y, form);
  if (gap < -kGapClampTol) {
    throw InconsistencyError("duality gap " + std::to_string(gap) + " is negative");
  }
  return std::max(gap, 0.0);
}

GapDecomposition gap_decomposition(const ProblemInstance& problem, ConstSpan x, ConstSpan y) {
  const Vector ax = pdcg::apply(problem.op, x);
  const double coupling = dot(y, ax);
  const Vector z = scaled(-1.0, adjoint_apply(problem.op, y));
  GapDecomposition d;
  d.regularizer_residual =
      problem.regularizer.value(x) + problem.regularizer.conj_value(z) + coupling;
  d.loss_residual = problem.loss.value(ax) + problem.loss.conj_value(y) - coupling;
  return d;
}

R2Estimate estimate_R2(const Loss& loss, const LinearOperator& op, R2Which which) {
  if (loss.dim() != op.rows()) throw DimensionError("estimate_R2: loss/operator shape mismatch");
  const Vector& row_norms = op.row_norms();

  if (!loss.is_separable()) {
    const double widest = *std::max_element(row_norms.begin(), row_norms.end());
    const double reach = (which == R2Which::Diameter ? 2.0 : 1.0) * loss.radius() * widest;
    return {reach * reach, R2Mode::ExactVertex};
  }

  const Vector& lo = loss.dual_lower();
  const Vector& hi = loss.dual_upper();
  const std::size_t n = loss.dim();
  if (n <= kExactVertexMaxRows) {
    Vector box_lo(n), box_hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (which == R2Which::Diameter) {
        // Difference box C - C = [-(hi - lo), hi - lo].
        box_hi[i] = hi[i] - lo[i];
        box_lo[i] = -box_hi[i];
      } else {
        box_lo[i] = lo[i];
        box_hi[i] = hi[i];
      }
    }
    const double v =
        kernels::max_sq_norm_over_box_vertices(op.data(), op.rows(), op.cols(), box_lo, box_hi);
    return {v, R2Mode::ExactVertex};
  }

  double reach = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double extent = which == R2Which::Diameter ? hi[i] - lo[i]
                                                    : std::max(std::abs(lo[i]), std::abs(hi[i]));
    reach += extent * row_norms[i];
  }
  return {reach * reach, R2Mode::ColumnNormBound};
}

double domain_radius_delta2(const Regularizer& reg, ConstSpan x0) {
  if (x0.size() != reg.dim()) throw DimensionError("domain_radius_delta2: wrong length");
  switch (reg.kind()) {
    case RegularizerKind::SquaredL2:
      throw ConfigError("domain_radius_delta2: K is unbounded");
    case RegularizerKind::SquaredL2Box: {
      if (!reg.contains(x0)) throw ConfigError("domain_radius_delta2: x0 outside the box");
      double d2 = 0.0;
      for (std::size_t i = 0; i < reg.dim(); ++i) {
        const double w = reg.upper()[i] - reg.lower()[i];
        d2 += w * w;
      }
      return 0.5 * reg.modulus() * d2;
    }
    case RegularizerKind::NegativeEntropySimplex: {
      if (!reg.contains(x0)) throw ConfigError("domain_radius_delta2: x0 not on the simplex");
      // KL(x || x0) is convex in x, so its maximum over the simplex sits at a
      // vertex e_i, where it equals -log x0_i.
      double worst = 0.0;
      for (double v : x0) {
        if (!(v > 0.0)) throw ConfigError("domain_radius_delta2: x0 must be interior");
        worst = std::max(worst, -std::log(v));
      }
      return worst;
    }
  }
  return kInf;
}

GeometryConstants geometry_constants(const ProblemInstance& problem, std::optional<Vector> x0) {
  GeometryConstants g;
  const R2Estimate diam = estimate_R2(problem.loss, problem.op, R2Which::Diameter);
  const R2Estimate origin = estimate_R2(problem.loss, problem.op, R2Which::Origin);
  g.r2_primal = diam.value;
  g.r2_origin = origin.value;
  g.mode = diam.mode == R2Mode::ExactVertex && origin.mode == R2Mode::ExactVertex
               ? R2Mode::ExactVertex
               : R2Mode::ColumnNormBound;
  if (problem.regularizer.is_compact()) {
    if (!x0) x0 = initial_state(problem, Algorithm::CompactMirrorDescent).x;
    g.delta2 = domain_radius_delta2(problem.regularizer, *x0);
  }
  return g;
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Prop1Avg: return "prop1-avg";
    case BoundKind::Prop1Min: return "prop1-min";
    case BoundKind::Prop1Bregman: return "prop1-bregman";
    case BoundKind::Prop3Dual: return "prop3-dual";
    case BoundKind::Prop3Gap: return "prop3-gap";
    case BoundKind::Prop4Dual: return "prop4-dual";
    case BoundKind::Prop4Gap: return "prop4-gap";
    case BoundKind::AppendixAGap: return "appendixa-gap";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& s) {
  for (BoundKind k : {BoundKind::Prop1Avg, BoundKind::Prop1Min, BoundKind::Prop1Bregman,
                      BoundKind::Prop3Dual, BoundKind::Prop3Gap, BoundKind::Prop4Dual,
                      BoundKind::Prop4Gap, BoundKind::AppendixAGap}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown bound '" + s + "'");
}

bool needs_reference(BoundKind k) {
  switch (k) {
    case BoundKind::Prop1Avg:
    case BoundKind::Prop1Min:
    case BoundKind::Prop1Bregman:
    case BoundKind::Prop3Dual:
    case BoundKind::Prop4Dual:
      return true;
    default:
      return false;
  }
}

double bound_value(BoundKind which, const GeometryConstants& c, double mu, long t) {
  const auto tt = static_cast<double>(t);
  switch (which) {
    case BoundKind::Prop1Avg:
    case BoundKind::Prop1Min:
    case BoundKind::Prop1Bregman:
      return c.r2_primal / (mu * (tt + 1.0));
    case BoundKind::Prop3Dual:
      return 2.0 * c.r2_primal / (mu * (tt + 1.0));
    case BoundKind::Prop3Gap:
      return 8.0 * c.r2_primal / (mu * (tt + 1.0));
    case BoundKind::Prop4Dual:
    case BoundKind::Prop4Gap:
      return 2.0 * c.r2_primal / (mu * (tt + 3.0));
    case BoundKind::AppendixAGap: {
      if (!c.delta2) throw ConfigError("appendix bound needs delta^2");
      // delta^2/(t rho_t) + R^2/(2 mu t) sum_u rho_u with rho_u = delta/(R sqrt(u));
      // equals 2 R delta / sqrt(t) for mu = 1.
      const double r = std::sqrt(c.r2_origin);
      const double delta = std::sqrt(*c.delta2);
      return r * delta * (1.0 + 1.0 / mu) / std::sqrt(tt);
    }
  }
  return kInf;
}

BoundReport check_bound(const RunResult& result, const GeometryConstants& constants, double mu,
                        BoundKind which, const BoundCheckOptions& options) {
  const ScheduleKind sk = result.schedule.kind;
  switch (which) {
    case BoundKind::Prop1Avg:
    case BoundKind::Prop1Min:
    case BoundKind::Prop1Bregman:
    case BoundKind::Prop3Dual:
    case BoundKind::Prop3Gap:
      if (!uses_strongly_convex_recursion(result.algorithm) || sk != ScheduleKind::TwoOverTPlusOne) {
        throw ConfigError(to_string(which) + " needs an md/gcg trace with rho_t = 2/(t+1)");
      }
      break;
    case BoundKind::Prop4Dual:
    case BoundKind::Prop4Gap:
      if (!uses_strongly_convex_recursion(result.algorithm) || sk != ScheduleKind::LineSearch) {
        throw ConfigError(to_string(which) + " needs an md/gcg trace with line search");
      }
      break;
    case BoundKind::AppendixAGap:
      if (result.algorithm != Algorithm::CompactMirrorDescent || sk != ScheduleKind::SqrtDecay) {
        throw ConfigError(to_string(which) + " needs an ns_md trace with sqrt decay");
      }
      break;
  }
  if (!(mu > 0.0)) throw ConfigError("check_bound: modulus must be positive");

  const ReferencePoint* ref = options.reference;
  const bool suboptimality = needs_reference(which);
  if (suboptimality && ref == nullptr) {
    throw ConfigError(to_string(which) + " needs a reference solution");
  }

  BoundReport report;
  report.which = which;
  const bool prop1 = which == BoundKind::Prop1Avg || which == BoundKind::Prop1Min ||
                     which == BoundKind::Prop1Bregman;
  if (prop1 && !result.carried_in_dual_image) {
    report.pass = false;
    report.note = "certificate void: carried subgradient not known to lie in -A^T C";
  }
  if (result.trace.empty()) {
    report.note = report.note.empty() ? "empty trace: vacuous pass" : report.note;
    return report;
  }

  const double extra = options.slack + (suboptimality ? ref->tolerance : 0.0);
  double running_min = kInf;
  const std::size_t rows = result.trace.size();
  for (std::size_t k = 0; k < rows; ++k) {
    const TraceRecord& rec = result.trace[k];
    double observed = 0.0;
    switch (which) {
      case BoundKind::Prop1Avg:
        observed = rec.avg_primal - ref->primal_value;
        break;
      case BoundKind::Prop1Min:
        running_min = std::min(running_min, rec.primal);
        observed = running_min - ref->primal_value;
        break;
      case BoundKind::Prop1Bregman:
        if (!rec.bregman_ref) throw ConfigError("trace has no distance-to-reference column");
        observed = *rec.bregman_ref;
        break;
      case BoundKind::Prop3Dual:
      case BoundKind::Prop4Dual:
        if (!rec.dual_subopt) throw ConfigError("trace has no dual suboptimality column");
        observed = *rec.dual_subopt;
        break;
      case BoundKind::Prop3Gap:
      case BoundKind::Prop4Gap: {
        // min over u <= t: row t holds gap(x_{t-1}, y_{t-1}); gap(x_t, y_t)
        // is the next row's, or the final gap.
        running_min = std::min(running_min, rec.gap);
        const std::optional<double> post =
            k + 1 < rows ? std::optional<double>(result.trace[k + 1].gap) : result.final_gap;
        observed = post ? std::min(running_min, *post) : running_min;
        break;
      }
      case BoundKind::AppendixAGap:
        observed = rec.avg_primal - rec.avg_dual;
        break;
    }
    const double bound = bound_value(which, constants, mu, rec.t) + extra;
    const double margin = bound - observed;
    report.iterations.push_back(rec.t);
    report.margins.push_back(margin);
    if (!report.worst_iteration || margin < report.worst_margin) {
      report.worst_iteration = rec.t;
      report.worst_margin = margin;
    }
    if (!(margin >= -1e-9 * (1.0 + std::abs(bound)))) report.pass = false;
  }
  return report;
}

}  // namespace pdcg
