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
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "pdcg/certificates.hpp"
#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProblemInstance svm_2d() {
  return {LinearOperator::identity(2), Regularizer::squared_l2(2, 1.0), Loss::hinge({1, -1}, 0.5)};
}

ProblemInstance small(LossKind loss, RegularizerKind reg, std::size_t n, std::size_t p,
                      std::uint64_t seed) {
  ProblemSpec spec;
  spec.loss = loss;
  spec.regularizer = reg;
  spec.n = n;
  spec.p = p;
  return generate_problem(spec, seed);
}

double sq_norm_adjoint(const LinearOperator& a, const Vector& y) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) c += a(i, j) * y[i];
    s += c * c;
  }
  return s;
}

Vector vertex(const Vector& lo, const Vector& hi, unsigned mask) {
  Vector v(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) v[i] = (mask >> i) & 1u ? hi[i] : lo[i];
  return v;
}

TEST(Objectives, Examples) {
  const ProblemInstance svm = svm_2d();
  EXPECT_DOUBLE_EQ(primal_objective(svm, Vector{0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(dual_objective(svm, Vector{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(duality_gap(svm, Vector{0, 0}, Vector{0, 0}), 1.0);
  EXPECT_EQ(dual_objective(svm, Vector{0.1, 0}), -kInf);

  const ProblemInstance lad{LinearOperator::identity(2), Regularizer::squared_l2(2, 2.0),
                            Loss::least_absolute_deviation({1, 2}, 1.0)};
  EXPECT_DOUBLE_EQ(primal_objective(lad, Vector{1, 2}), 5.0);

  const ProblemInstance box{LinearOperator::identity(2),
                            Regularizer::squared_l2_box(1.0, {0, 0}, {1, 1}),
                            Loss::least_absolute_deviation({1, 2}, 1.0)};
  EXPECT_EQ(primal_objective(box, Vector{2, 0}), kInf);
  EXPECT_EQ(primal_objective(box, Vector{2, 0}, ObjectiveForm::Constrained), kInf);
  EXPECT_DOUBLE_EQ(primal_objective(box, Vector{1, 1}, ObjectiveForm::Constrained), 1.0);
  // -sigma_K(-A^T y) - f*(y) at y = (1, 1): -max(0, -1)*2 - (1 + 2).
  EXPECT_DOUBLE_EQ(dual_objective(box, Vector{1, 1}, ObjectiveForm::Constrained), -3.0);
}

TEST(Objectives, CertifiedOptimumHasTinyGap) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 15, 6, 2);
  const ReferenceSolution ref = reference_solution(p, 1e-9);
  ASSERT_TRUE(ref.certified);
  EXPECT_LE(duality_gap(p, ref.x_star, ref.y_star), 1e-8);
  EXPECT_GE(duality_gap(p, ref.x_star, ref.y_star), 0.0);
}

TEST(Objectives, WeakDualityOnRandomPairs) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (LossKind loss : {LossKind::Hinge, LossKind::LeastAbsoluteDeviation, LossKind::Logistic,
                        LossKind::DualNormGauge}) {
    for (RegularizerKind reg : {RegularizerKind::SquaredL2, RegularizerKind::SquaredL2Box,
                                RegularizerKind::NegativeEntropySimplex}) {
      const ProblemInstance p = small(loss, reg, 12, 5, 4);
      for (int trial = 0; trial < 850; ++trial) {
        Vector z(p.p());
        for (double& v : z) v = 2 * g(rng);
        const Vector x = p.regularizer.conj_grad(z);
        Vector y(p.n());
        if (p.loss.is_separable()) {
          for (std::size_t i = 0; i < p.n(); ++i) {
            const double w = u(rng);
            y[i] = (1 - w) * p.loss.dual_lower()[i] + w * p.loss.dual_upper()[i];
          }
        } else {
          double l1 = 0.0;
          for (double& v : y) {
            v = g(rng);
            l1 += std::abs(v);
          }
          for (double& v : y) v *= p.loss.radius() * u(rng) / l1;
        }
        EXPECT_GE(primal_objective(p, x), dual_objective(p, y) - 1e-10);
        EXPECT_GE(duality_gap(p, x, y), 0.0);
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 10000);
}

TEST(GapDecomposition, ResidualsVanishAtFenchelEquality) {
  const ProblemInstance p = small(LossKind::Logistic, RegularizerKind::SquaredL2, 20, 7, 8);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector y(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) {
      const double w = u(rng);
      y[i] = (1 - w) * p.loss.dual_lower()[i] + w * p.loss.dual_upper()[i];
    }
    const Vector x = p.regularizer.conj_grad(scaled(-1.0, adjoint_apply(p.op, y)));
    const GapDecomposition d = gap_decomposition(p, x, y);
    EXPECT_NEAR(d.regularizer_residual, 0.0, 1e-10);
    EXPECT_NEAR(d.regularizer_residual + d.loss_residual, duality_gap(p, x, y), 1e-10);
    const Vector y2 = p.loss.subgradient(pdcg::apply(p.op, x));
    EXPECT_NEAR(gap_decomposition(p, x, y2).loss_residual, 0.0, 1e-10);
  }
}

TEST(EstimateR2, Examples) {
  const Loss lad = Loss::least_absolute_deviation({0, 0}, 1.0);
  const auto i2 = LinearOperator::identity(2);
  EXPECT_DOUBLE_EQ(estimate_R2(lad, i2, R2Which::Diameter).value, 8.0);
  EXPECT_DOUBLE_EQ(estimate_R2(lad, i2, R2Which::Origin).value, 2.0);
  EXPECT_EQ(estimate_R2(lad, i2, R2Which::Diameter).mode, R2Mode::ExactVertex);
  const auto zero = LinearOperator::zeros(2, 3);
  EXPECT_DOUBLE_EQ(estimate_R2(lad, zero, R2Which::Diameter).value, 0.0);
  EXPECT_DOUBLE_EQ(estimate_R2(lad, zero, R2Which::Origin).value, 0.0);

  const auto a = LinearOperator::from_rows({{3, 4}, {1, 0}});
  const Loss gauge = Loss::dual_norm_gauge(2, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(estimate_R2(gauge, a, R2Which::Diameter).value, 25.0);
  EXPECT_DOUBLE_EQ(estimate_R2(gauge, a, R2Which::Origin).value, 6.25);
}

TEST(EstimateR2, ExactMatchesBruteForcePairs) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (LossKind loss : {LossKind::Hinge, LossKind::LeastAbsoluteDeviation, LossKind::Logistic}) {
      const ProblemInstance p = small(loss, RegularizerKind::SquaredL2, n, 4, 20 + n);
      const Vector& lo = p.loss.dual_lower();
      const Vector& hi = p.loss.dual_upper();
      double diameter = 0.0, origin = 0.0;
      const unsigned count = 1u << n;
      for (unsigned m1 = 0; m1 < count; ++m1) {
        const Vector v1 = vertex(lo, hi, m1);
        origin = std::max(origin, sq_norm_adjoint(p.op, v1));
        for (unsigned m2 = 0; m2 < count; ++m2) {
          const Vector v2 = vertex(lo, hi, m2);
          diameter = std::max(diameter, sq_norm_adjoint(p.op, combine(1.0, v1, -1.0, v2)));
        }
      }
      const R2Estimate d = estimate_R2(p.loss, p.op, R2Which::Diameter);
      const R2Estimate o = estimate_R2(p.loss, p.op, R2Which::Origin);
      EXPECT_EQ(d.mode, R2Mode::ExactVertex);
      EXPECT_NEAR(d.value, diameter, 1e-12 * (1 + diameter));
      EXPECT_NEAR(o.value, origin, 1e-12 * (1 + origin));
      EXPECT_LE(d.value, 4 * o.value * (1 + 1e-12));
    }
  }
}

TEST(EstimateR2, ExactNeverExceedsColumnNormBound) {
  for (std::size_t n : {5u, 12u, 20u}) {
    const ProblemInstance p = small(LossKind::LeastAbsoluteDeviation, RegularizerKind::SquaredL2,
                                    n, 6, n);
    double diam = 0.0, orig = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = p.loss.dual_lower()[i], hi = p.loss.dual_upper()[i];
      diam += (hi - lo) * p.op.row_norms()[i];
      orig += std::max(std::abs(lo), std::abs(hi)) * p.op.row_norms()[i];
    }
    EXPECT_LE(estimate_R2(p.loss, p.op, R2Which::Diameter).value, diam * diam * (1 + 1e-12));
    EXPECT_LE(estimate_R2(p.loss, p.op, R2Which::Origin).value, orig * orig * (1 + 1e-12));
  }
}

TEST(EstimateR2, LargeBoxesUseColumnNormBound) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 30, 5, 1);
  double diam = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    diam += (p.loss.dual_upper()[i] - p.loss.dual_lower()[i]) * p.op.row_norms()[i];
  }
  const R2Estimate d = estimate_R2(p.loss, p.op, R2Which::Diameter);
  EXPECT_EQ(d.mode, R2Mode::ColumnNormBound);
  EXPECT_NEAR(d.value, diam * diam, 1e-12 * diam * diam);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m1 = static_cast<unsigned>(rng()), m2 = static_cast<unsigned>(rng());
    const Vector diff = combine(1.0, vertex(p.loss.dual_lower(), p.loss.dual_upper(), m1), -1.0,
                                vertex(p.loss.dual_lower(), p.loss.dual_upper(), m2));
    EXPECT_LE(sq_norm_adjoint(p.op, diff), d.value);
  }
}

TEST(DomainRadius, Examples) {
  const Regularizer ent = Regularizer::negative_entropy_simplex(2);
  const double d2 = domain_radius_delta2(ent, Vector{0.5, 0.5});
  EXPECT_NEAR(d2, std::log(2.0), 1e-15);
  EXPECT_NEAR(ent.bregman(Vector{1, 0}, Vector{0.5, 0.5}), d2, 1e-15);
  EXPECT_NEAR(ent.bregman(Vector{0, 1}, Vector{0.5, 0.5}), d2, 1e-15);
  EXPECT_THROW(domain_radius_delta2(ent, Vector{1, 0}), ConfigError);

  const Regularizer box = Regularizer::squared_l2_box(1.0, {0, 0}, {1, 1});
  for (const Vector& x0 : {Vector{0.5, 0.5}, Vector{0.0, 1.0}, Vector{0.2, 0.9}}) {
    const double v = domain_radius_delta2(box, x0);
    EXPECT_DOUBLE_EQ(v, 1.0);
    double corner = 0.0;
    for (unsigned m = 0; m < 4; ++m) corner = std::max(corner, box.bregman(vertex({0, 0}, {1, 1}, m), x0));
    EXPECT_LE(corner, v);
    EXPECT_GE(v, 2.0 * 1.0 / 8.0);
  }
  EXPECT_THROW(domain_radius_delta2(Regularizer::squared_l2(2, 1.0), Vector{0, 0}), ConfigError);
}

TEST(BoundValue, FormulasAndOrdering) {
  GeometryConstants g;
  g.r2_primal = 3.0;
  g.r2_origin = 2.0;
  g.delta2 = 0.5;
  const double mu = 1.5;
  for (long t = 1; t <= 1000; ++t) {
    const double tt = static_cast<double>(t);
    EXPECT_DOUBLE_EQ(bound_value(BoundKind::Prop1Avg, g, mu, t), 3.0 / (mu * (tt + 1)));
    EXPECT_DOUBLE_EQ(bound_value(BoundKind::Prop3Dual, g, mu, t), 6.0 / (mu * (tt + 1)));
    EXPECT_DOUBLE_EQ(bound_value(BoundKind::Prop3Gap, g, mu, t), 24.0 / (mu * (tt + 1)));
    EXPECT_DOUBLE_EQ(bound_value(BoundKind::Prop4Gap, g, mu, t), 6.0 / (mu * (tt + 3)));
    EXPECT_LE(bound_value(BoundKind::Prop4Dual, g, mu, t),
              bound_value(BoundKind::Prop3Dual, g, mu, t));
  }
  g.r2_origin = 4.0;
  EXPECT_NEAR(bound_value(BoundKind::AppendixAGap, g, 1.0, 4),
              2.0 * 2.0 * std::sqrt(0.5) / 2.0, 1e-15);
}

TEST(CheckBound, PairingErrors) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 10, 4, 1);
  const GeometryConstants g = geometry_constants(p);
  const RunResult fixed =
      run(p, Algorithm::ConditionalGradient, StepSchedule::two_over_t_plus_one(), {20});
  EXPECT_THROW(check_bound(fixed, g, 1.0, BoundKind::Prop4Gap), ConfigError);
  EXPECT_THROW(check_bound(fixed, g, 1.0, BoundKind::AppendixAGap), ConfigError);
  EXPECT_THROW(check_bound(fixed, g, 1.0, BoundKind::Prop3Dual), ConfigError);
  const RunResult harmonic = run(p, Algorithm::ConditionalGradient, StepSchedule::one_over_t(), {20});
  EXPECT_THROW(check_bound(harmonic, g, 1.0, BoundKind::Prop3Gap), ConfigError);
}

TEST(CheckBound, EmptyTraceIsVacuous) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 10, 4, 1);
  const RunResult r =
      run(p, Algorithm::ConditionalGradient, StepSchedule::two_over_t_plus_one(), {0});
  const BoundReport rep = check_bound(r, geometry_constants(p), 1.0, BoundKind::Prop3Gap);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.iterations.empty());
  EXPECT_FALSE(rep.worst_iteration.has_value());
}

TEST(CheckBound, StronglyConvexBoundsHoldOnSmallInstances) {
  for (LossKind loss : {LossKind::Hinge, LossKind::LeastAbsoluteDeviation, LossKind::Logistic}) {
    const ProblemInstance p = small(loss, RegularizerKind::SquaredL2, 20, 10, 3);
    const GeometryConstants g = geometry_constants(p);
    const ReferenceSolution ref = reference_solution(p, 1e-9);
    ASSERT_TRUE(ref.certified) << to_string(loss);
    const ReferencePoint point = ref.as_reference_point();
    RunOptions options;
    options.reference = &point;
    const BoundCheckOptions check{&point, 1e-8};
    const double mu = p.regularizer.modulus();

    const RunResult md = run(p, Algorithm::MirrorDescent, StepSchedule::two_over_t_plus_one(),
                             {500}, options);
    for (BoundKind k : {BoundKind::Prop1Avg, BoundKind::Prop1Min, BoundKind::Prop1Bregman}) {
      EXPECT_TRUE(check_bound(md, g, mu, k, check).pass) << to_string(loss) << to_string(k);
    }
    const RunResult gcg = run(p, Algorithm::ConditionalGradient,
                              StepSchedule::two_over_t_plus_one(), {500}, options);
    for (BoundKind k : {BoundKind::Prop3Dual, BoundKind::Prop3Gap}) {
      EXPECT_TRUE(check_bound(gcg, g, mu, k, check).pass) << to_string(loss) << to_string(k);
    }
    const RunResult ls = run(p, Algorithm::ConditionalGradient,
                             make_schedule(ScheduleKind::LineSearch, p, g), {500}, options);
    for (BoundKind k : {BoundKind::Prop4Dual, BoundKind::Prop4Gap}) {
      EXPECT_TRUE(check_bound(ls, g, mu, k, check).pass) << to_string(loss) << to_string(k);
    }
  }
}

TEST(CheckBound, MonotoneInRadius) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 20, 10, 6);
  GeometryConstants g = geometry_constants(p);
  const RunResult r =
      run(p, Algorithm::ConditionalGradient, StepSchedule::two_over_t_plus_one(), {300});
  for (double shrink : {1e-3, 1e-2, 0.1, 0.5, 1.0}) {
    GeometryConstants lo = g, hi = g;
    lo.r2_primal *= shrink;
    hi.r2_primal *= shrink * 2.0;
    const BoundReport a = check_bound(r, lo, 1.0, BoundKind::Prop3Gap);
    const BoundReport b = check_bound(r, hi, 1.0, BoundKind::Prop3Gap);
    EXPECT_TRUE(!a.pass || b.pass);
    for (std::size_t k = 0; k < a.margins.size(); ++k) EXPECT_GE(b.margins[k], a.margins[k]);
  }
  GeometryConstants tiny = g;
  tiny.r2_primal = 1e-12;
  EXPECT_FALSE(check_bound(r, tiny, 1.0, BoundKind::Prop3Gap).pass);
}

TEST(CheckBound, WarmStartVoidsMirrorDescentCertificate) {
  const ProblemInstance p = small(LossKind::Hinge, RegularizerKind::SquaredL2, 10, 4, 1);
  const ReferenceSolution ref = reference_solution(p, 1e-9);
  const ReferencePoint point = ref.as_reference_point();
  RunOptions options;
  options.reference = &point;
  options.warm_start = initial_state(p, Algorithm::MirrorDescent);
  options.warm_start->carried_h_sub.assign(p.p(), 50.0);
  const RunResult r = run(p, Algorithm::MirrorDescent, StepSchedule::two_over_t_plus_one(), {20},
                          options);
  EXPECT_FALSE(r.carried_in_dual_image);
  const BoundReport rep = check_bound(r, geometry_constants(p), 1.0, BoundKind::Prop1Avg,
                                      {&point, 1e-8});
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.note.empty());
}

TEST(CheckBound, CompactMirrorDescentGap) {
  const ProblemInstance p =
      small(LossKind::LeastAbsoluteDeviation, RegularizerKind::NegativeEntropySimplex, 20, 50, 1);
  const GeometryConstants g = geometry_constants(p);
  ASSERT_TRUE(g.delta2.has_value());
  EXPECT_NEAR(*g.delta2, std::log(50.0), 1e-12);
  const RunResult r = run(p, Algorithm::CompactMirrorDescent,
                          make_schedule(ScheduleKind::SqrtDecay, p, g), {2000});
  EXPECT_TRUE(check_bound(r, g, 1.0, BoundKind::AppendixAGap).pass);
}

TEST(BoundKindNames, RoundTrip) {
  for (BoundKind k : {BoundKind::Prop1Avg, BoundKind::Prop1Min, BoundKind::Prop1Bregman,
                      BoundKind::Prop3Dual, BoundKind::Prop3Gap, BoundKind::Prop4Dual,
                      BoundKind::Prop4Gap, BoundKind::AppendixAGap}) {
    EXPECT_EQ(parse_bound_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_bound_kind("prop9"), ConfigError);
  EXPECT_TRUE(needs_reference(BoundKind::Prop4Dual));
  EXPECT_FALSE(needs_reference(BoundKind::Prop4Gap));
}

}  // namespace
}  // namespace pdcg
