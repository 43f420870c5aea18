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

#include "pdcg/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdcg/kernels.hpp"

namespace pdcg {

void require_same_size(ConstSpan a, ConstSpan b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

double dot(ConstSpan a, ConstSpan b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(ConstSpan a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm(ConstSpan a) { return std::sqrt(squared_norm(a)); }

double max_abs(ConstSpan a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(ConstSpan a, ConstSpan b) {
  require_same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool all_finite(ConstSpan a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Vector combine(double a, ConstSpan x, double b, ConstSpan y) {
  require_same_size(x, y, "combine");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

Vector scaled(double a, ConstSpan x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i];
  return out;
}

LinearOperator::LinearOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("LinearOperator: empty shape");
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("LinearOperator: expected " + std::to_string(rows_ * cols_) +
                         " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite(data_)) throw DomainError("LinearOperator: non-finite entry");
  row_norms_.assign(rows_, 0.0);
  column_norms_.assign(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const double v = data_[i * cols_ + j];
      row_norms_[i] += v * v;
      column_norms_[j] += v * v;
    }
  }
  for (double& v : row_norms_) v = std::sqrt(v);
  for (double& v : column_norms_) v = std::sqrt(v);
}

LinearOperator LinearOperator::identity(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return {n, n, std::move(d)};
}

LinearOperator LinearOperator::zeros(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<double>(rows * cols, 0.0)};
}

LinearOperator LinearOperator::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t p = n == 0 ? 0 : rows.begin()->size();
  std::vector<double> d;
  d.reserve(n * p);
  for (const auto& r : rows) {
    if (r.size() != p) throw DimensionError("LinearOperator::from_rows: ragged rows");
    d.insert(d.end(), r.begin(), r.end());
  }
  return {n, p, std::move(d)};
}

Vector LinearOperator::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = data_[i * cols_ + j];
  return c;
}

Vector apply(const LinearOperator& op, ConstSpan x) {
  if (x.size() != op.cols()) {
    throw DimensionError("apply: operator has " + std::to_string(op.cols()) +
                         " columns, vector has length " + std::to_string(x.size()));
  }
  if (!all_finite(x)) throw DomainError("apply: non-finite input");
  Vector out(op.rows());
  kernels::matvec(op.data(), op.rows(), op.cols(), x, out);
  return out;
}

Vector adjoint_apply(const LinearOperator& op, ConstSpan y) {
  if (y.size() != op.rows()) {
    throw DimensionError("adjoint_apply: operator has " + std::to_string(op.rows()) +
                         " rows, vector has length " + std::to_string(y.size()));
  }
  if (!all_finite(y)) throw DomainError("adjoint_apply: non-finite input");
  Vector out(op.cols());
  kernels::matvec_transposed(op.data(), op.rows(), op.cols(), y, out);
  return out;
}

}  // namespace pdcg
