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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PairValue {
  Vector x;
  double primal = 0.0;
  double dual = 0.0;
  double gap = kInf;
};

PairValue evaluate(const ProblemInstance& problem, const Vector& y) {
  PairValue v;
  const Vector minus_aty = scaled(-1.0, adjoint_apply(problem.op, y));
  v.x = problem.regularizer.conj_grad(minus_aty);
  v.primal = primal_objective(problem, v.x);
  v.dual = dual_objective(problem, y);
  v.gap = std::max(v.primal - v.dual, 0.0);
  return v;
}

// phi(d) = -h*(z - d a) - f_i*(y_i + d) is concave in d. Returns phi'(d) and
// phi''(d) for z = -A^T y.
class CoordinateModel {
 public:
  explicit CoordinateModel(const ProblemInstance& problem) : problem_(problem), work_(problem.p()) {}

  void derivatives(ConstSpan a, ConstSpan z, std::size_t i, double yi, double d, double& g,
                   double& gp) {
    const Regularizer& reg = problem_.regularizer;
    const double mu = reg.modulus();
    const std::size_t p = a.size();
    double ax = 0.0;
    double curvature = 0.0;
    switch (reg.kind()) {
      case RegularizerKind::SquaredL2:
        for (std::size_t j = 0; j < p; ++j) {
          ax += a[j] * (z[j] - d * a[j]);
          curvature += a[j] * a[j];
        }
        ax /= mu;
        curvature /= mu;
        break;
      case RegularizerKind::SquaredL2Box:
        for (std::size_t j = 0; j < p; ++j) {
          const double raw = (z[j] - d * a[j]) / mu;
          const double xj = std::clamp(raw, reg.lower()[j], reg.upper()[j]);
          ax += a[j] * xj;
          if (raw > reg.lower()[j] && raw < reg.upper()[j]) curvature += a[j] * a[j] / mu;
        }
        break;
      case RegularizerKind::NegativeEntropySimplex: {
        double top = -kInf;
        for (std::size_t j = 0; j < p; ++j) {
          work_[j] = z[j] - d * a[j];
          top = std::max(top, work_[j]);
        }
        double total = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          work_[j] = std::exp(work_[j] - top);
          total += work_[j];
        }
        double second = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          const double xj = work_[j] / total;
          ax += a[j] * xj;
          second += a[j] * a[j] * xj;
        }
        curvature = std::max(second - ax * ax, 0.0);
        break;
      }
    }
    const Loss& loss = problem_.loss;
    g = ax - loss.coordinate_conj_derivative(i, yi + d);
    gp = -curvature;
    if (loss.kind() == LossKind::Logistic) {
      const double s = loss.scale();
      const double beta = -loss.data()[i] * (yi + d) / s;
      gp -= (1.0 / beta + 1.0 / (1.0 - beta)) / s;
    }
  }

 private:
  const ProblemInstance& problem_;
  Vector work_;
};

// Exact maximization of phi over [lo, hi] by Newton's method safeguarded
// with bisection.
double coordinate_step(CoordinateModel& model, ConstSpan a, ConstSpan z, std::size_t i, double yi,
                       double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double g = 0.0;
  double gp = 0.0;
  model.derivatives(a, z, i, yi, lo, g, gp);
  if (g <= 0.0) return lo;
  model.derivatives(a, z, i, yi, hi, g, gp);
  if (g >= 0.0) return hi;

  double d = std::clamp(0.0, lo, hi);
  if (d <= lo || d >= hi) d = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    model.derivatives(a, z, i, yi, d, g, gp);
    if (g == 0.0) return d;
    if (g > 0.0) {
      lo = d;
    } else {
      hi = d;
    }
    double next = gp < 0.0 ? d - g / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double floor = 1e-16 * (1.0 + std::abs(yi));
    if (std::abs(next - d) <= floor || hi - lo <= floor) return next;
    d = next;
  }
  return d;
}

ReferenceSolution finish(const Vector& y, PairValue v, long iters, bool certified) {
  ReferenceSolution r;
  r.y_star = y;
  r.x_star = std::move(v.x);
  r.primal_value = v.primal;
  r.dual_value = v.dual;
  r.certified_gap = v.gap;
  r.iterations = iters;
  r.certified = certified;
  return r;
}

ReferenceSolution coordinate_ascent(const ProblemInstance& problem, double tol, long cap) {
  const std::size_t n = problem.n();
  const Loss& loss = problem.loss;
  Vector y(n, 0.0);
  Vector best_y = y;
  PairValue best = evaluate(problem, y);
  long iters = 0;
  CoordinateModel model(problem);

  for (long sweep = 1; sweep <= cap; ++sweep) {
    Vector z = scaled(-1.0, adjoint_apply(problem.op, y));
    for (std::size_t i = 0; i < n; ++i) {
      const ConstSpan a = problem.op.row(i);
      const double d = coordinate_step(model, a, z, i, y[i], loss.dual_lower()[i] - y[i],
                                       loss.dual_upper()[i] - y[i]);
      if (d == 0.0) continue;
      y[i] = std::clamp(y[i] + d, loss.dual_lower()[i], loss.dual_upper()[i]);
      for (std::size_t j = 0; j < a.size(); ++j) z[j] -= d * a[j];
    }
    iters = sweep;
    PairValue v = evaluate(problem, y);
    if (v.gap < best.gap) {
      best = std::move(v);
      best_y = y;
    }
    if (best.gap <= tol) return finish(best_y, std::move(best), iters, true);
  }
  return finish(best_y, std::move(best), iters, false);
}

// Euclidean projection onto {y : ||y||_1 <= radius}.
Vector project_l1_ball(Vector v, double radius) {
  double l1 = 0.0;
  for (double e : v) l1 += std::abs(e);
  if (l1 <= radius) return v;
  Vector mag(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    cumulative += mag[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (k + 1 == mag.size() || mag[k + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  for (double& e : v) e = std::copysign(std::max(std::abs(e) - theta, 0.0), e);
  return v;
}

// Accelerated proximal gradient on the dual of a gauge-loss problem, with
// backtracking on the step and function-value restarts.
ReferenceSolution accelerated_dual_gradient(const ProblemInstance& problem, double tol, long cap) {
  const Loss& loss = problem.loss;
  const std::size_t n = problem.n();
  auto smooth = [&](const Vector& y, Vector& grad) {
    const Vector z = scaled(-1.0, adjoint_apply(problem.op, y));
    grad = pdcg::apply(problem.op, problem.regularizer.conj_grad(z));
    return -problem.regularizer.conj_value(z);
  };
  auto prox = [&](const Vector& v, double step) {
    Vector w(v.size());
    const double cut = loss.penalty() * step;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = std::copysign(std::max(std::abs(v[i]) - cut, 0.0), v[i]);
    }
    return project_l1_ball(std::move(w), loss.radius());
  };

  Vector y(n, 0.0), prev = y, grad;
  Vector best_y = y;
  PairValue best = evaluate(problem, y);
  double objective = best.dual;
  double lipschitz = 1.0 / problem.regularizer.modulus();
  double momentum = 1.0;
  long iters = 0;
  for (long t = 1; t <= cap; ++t) {
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const Vector ext = combine(1.0 + (momentum - 1.0) / next_momentum, y,
                               -(momentum - 1.0) / next_momentum, prev);
    const double base = smooth(ext, grad);
    Vector cand, cand_grad;
    for (;;) {
      cand = prox(combine(1.0, ext, 1.0 / lipschitz, grad), 1.0 / lipschitz);
      const Vector step = combine(1.0, cand, -1.0, ext);
      const double model = base + dot(grad, step) - 0.5 * lipschitz * squared_norm(step);
      if (smooth(cand, cand_grad) >= model - 1e-15 * (1.0 + std::abs(base))) break;
      lipschitz *= 2.0;
    }
    iters = t;
    PairValue v = evaluate(problem, cand);
    if (v.dual < objective) {
      momentum = 1.0;
      prev = y;
    } else {
      momentum = next_momentum;
      prev = std::move(y);
      y = cand;
      objective = v.dual;
    }
    if (v.gap < best.gap) {
      best = std::move(v);
      best_y = cand;
    }
    if (best.gap <= tol) return finish(best_y, std::move(best), iters, true);
  }
  return finish(best_y, std::move(best), iters, false);
}

}  // namespace

ReferencePoint ReferenceSolution::as_reference_point() const {
  return {x_star, y_star, primal_value, dual_value, certified_gap};
}

ReferenceSolution reference_solution(const ProblemInstance& problem, double tol, long cap) {
  validate_instance(problem);
  if (std::isnan(tol) || tol < 0.0) throw ArgumentError("reference_solution: tol must be >= 0");
  if (cap < 0) throw ArgumentError("reference_solution: cap must be >= 0");
  if (problem.loss.is_separable()) return coordinate_ascent(problem, tol, cap);
  return accelerated_dual_gradient(problem, tol, cap);
}

}  // namespace pdcg
