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

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "pdcg/errors.hpp"

namespace pdcg {

// Dense real vector. All arithmetic in the library is double precision.
using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;

double dot(ConstSpan a, ConstSpan b);
double squared_norm(ConstSpan a);
double norm(ConstSpan a);
double max_abs(ConstSpan a);
double max_abs_diff(ConstSpan a, ConstSpan b);
bool all_finite(ConstSpan a);

// a * x + b * y, elementwise.
Vector combine(double a, ConstSpan x, double b, ConstSpan y);
Vector scaled(double a, ConstSpan x);

void require_same_size(ConstSpan a, ConstSpan b, const char* what);

// Dense row-major n x p matrix. Immutable after construction; row and
// column norms are cached for the geometry estimates in certificates.
class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static LinearOperator identity(std::size_t n);
  static LinearOperator zeros(std::size_t rows, std::size_t cols);
  static LinearOperator from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  ConstSpan row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;
  ConstSpan data() const { return data_; }
  const Vector& row_norms() const { return row_norms_; }
  const Vector& column_norms() const { return column_norms_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  Vector row_norms_;
  Vector column_norms_;
};

// Ax. Throws DimensionError when x.size() != cols. Call it qualified
// (pdcg::apply): a std::vector argument brings std::apply into lookup.
Vector apply(const LinearOperator& op, ConstSpan x);
// A^T y. Throws DimensionError when y.size() != rows.
Vector adjoint_apply(const LinearOperator& op, ConstSpan y);

// One certificate row of a run. Values refer to the pre-step pair
// (x_{t-1}, y_{t-1}) except dual_subopt and bregman_ref, which refer to the
// post-step iterates (y_t, x_t) so the bounds can be compared at index t.
struct TraceRecord {
  long t = 0;
  double rho = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;  // primal - dual, unclamped
  double avg_primal = 0.0;
  double avg_dual = 0.0;
  std::optional<double> dual_subopt;
  std::optional<double> bregman_ref;
};

}  // namespace pdcg
