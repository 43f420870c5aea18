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
#include <string>
#include <vector>

#include "pdcg/algorithms.hpp"
#include "pdcg/core.hpp"
#include "pdcg/problem.hpp"

namespace pdcg {

// Regularized: min h(x) + f(Ax), dual -h*(-A^T y) - f*(y).
// Constrained: min_{x in K} f(Ax), dual -sigma_K(-A^T y) - f*(y).
enum class ObjectiveForm { Regularized, Constrained };

double primal_objective(const ProblemInstance& problem, ConstSpan x,
                        ObjectiveForm form = ObjectiveForm::Regularized);
double dual_objective(const ProblemInstance& problem, ConstSpan y,
                      ObjectiveForm form = ObjectiveForm::Regularized);

// Negative gaps within this threshold are round-off; below it, an oracle bug.
inline constexpr double kGapClampTol = 1e-10;

// primal - dual, clamped at zero for round-off. Throws InconsistencyError
// when the raw gap is below -kGapClampTol.
double duality_gap(const ProblemInstance& problem, ConstSpan x, ConstSpan y,
                   ObjectiveForm form = ObjectiveForm::Regularized);

// The two Fenchel-Young residuals that sum to the regularized gap:
// h(x) + h*(-A^T y) + <y, Ax>  and  f(Ax) + f*(y) - <y, Ax>.
struct GapDecomposition {
  double regularizer_residual = 0.0;
  double loss_residual = 0.0;
};
GapDecomposition gap_decomposition(const ProblemInstance& problem, ConstSpan x, ConstSpan y);

enum class R2Mode { ExactVertex, ColumnNormBound };
enum class R2Which { Diameter, Origin };

// Vertex enumeration is used for boxes up to this many rows.
inline constexpr std::size_t kExactVertexMaxRows = 20;

struct R2Estimate {
  double value = 0.0;
  R2Mode mode = R2Mode::ExactVertex;
};

// Diameter: max_{y,y' in C} ||A^T (y - y')||^2. Origin: max_{y in C} ||A^T y||^2.
R2Estimate estimate_R2(const Loss& loss, const LinearOperator& op, R2Which which);

// sup_{x in K} D(x, x0) for compact K. Throws ConfigError when K is
// unbounded or x0 is not interior (entropy).
double domain_radius_delta2(const Regularizer& reg, ConstSpan x0);

struct GeometryConstants {
  double r2_primal = 0.0;
  double r2_origin = 0.0;
  std::optional<double> delta2;
  R2Mode mode = R2Mode::ExactVertex;
};

GeometryConstants geometry_constants(const ProblemInstance& problem,
                                     std::optional<Vector> x0 = std::nullopt);

enum class BoundKind {
  Prop1Avg,
  Prop1Min,
  Prop1Bregman,
  Prop3Dual,
  Prop3Gap,
  Prop4Dual,
  Prop4Gap,
  AppendixAGap
};

std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);
bool needs_reference(BoundKind k);

// Value of the bound at iteration t.
double bound_value(BoundKind which, const GeometryConstants& constants, double mu, long t);

struct BoundReport {
  BoundKind which = BoundKind::Prop3Gap;
  std::vector<double> margins;  // bound - observed, one per checked iteration
  std::vector<long> iterations;
  bool pass = true;
  std::optional<long> worst_iteration;
  double worst_margin = 0.0;
  std::string note;
};

struct BoundCheckOptions {
  // Reference pair for the suboptimality bounds. Its certified gap is added
  // to those bounds.
  const ReferencePoint* reference = nullptr;
  // Extra absolute slack added to every bound.
  double slack = 0.0;
};

// Compares a finished trace against one convergence bound. Throws
// ConfigError when the trace's algorithm or schedule does not match the
// bound, or when a suboptimality bound is requested without reference data.
BoundReport check_bound(const RunResult& result, const GeometryConstants& constants, double mu,
                        BoundKind which, const BoundCheckOptions& options = {});

}  // namespace pdcg
