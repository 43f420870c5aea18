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

#include "pdcg/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include <omp.h>

namespace pdcg::kernels {
namespace {

// Fixed so the enumeration result does not depend on the thread count.
constexpr std::uint64_t kVertexChunks = 64;

double sq_norm(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

}  // namespace

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(rows);
  const bool parallel = rows * cols >= kParallelMinWork;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const double* r = a.data() + static_cast<std::size_t>(i) * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += r[j] * x[j];
    out[static_cast<std::size_t>(i)] = s;
  }
}

void matvec_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out) {
  const auto p = static_cast<std::int64_t>(cols);
  const bool parallel = rows * cols >= kParallelMinWork;
  constexpr std::int64_t kBlock = 64;
  const std::int64_t blocks = (p + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const auto j0 = static_cast<std::size_t>(b * kBlock);
    const auto j1 = static_cast<std::size_t>(std::min(p, (b + 1) * kBlock));
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(j0),
              out.begin() + static_cast<std::ptrdiff_t>(j1), 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double yi = y[i];
      const double* row = a.data() + i * cols;
      for (std::size_t j = j0; j < j1; ++j) out[j] += row[j] * yi;
    }
  }
}

double max_sq_norm_over_box_vertices(std::span<const double> a, std::size_t rows,
                                     std::size_t cols, std::span<const double> lo,
                                     std::span<const double> hi) {
  if (rows == 0) return 0.0;
  const std::uint64_t total = std::uint64_t{1} << rows;
  const std::uint64_t chunks = std::min<std::uint64_t>(kVertexChunks, total);
  const std::uint64_t per_chunk = total / chunks;
  const bool parallel = total * cols >= kParallelMinWork;
  std::vector<double> chunk_max(chunks, 0.0);

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
    const std::uint64_t end = begin + per_chunk;
    // Vertex k of the walk is Gray code k ^ (k >> 1); bit i set means hi_i.
    std::uint64_t gray = begin ^ (begin >> 1);
    std::vector<double> w(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double v = ((gray >> i) & 1U) ? hi[i] : lo[i];
      for (std::size_t j = 0; j < cols; ++j) w[j] += a[i * cols + j] * v;
    }
    double best = sq_norm(w);
    for (std::uint64_t k = begin + 1; k < end; ++k) {
      const auto flip = static_cast<std::size_t>(std::countr_zero(k));
      const bool to_hi = !((gray >> flip) & 1U);
      gray ^= std::uint64_t{1} << flip;
      const double delta = to_hi ? hi[flip] - lo[flip] : lo[flip] - hi[flip];
      const double* r = a.data() + flip * cols;
      for (std::size_t j = 0; j < cols; ++j) w[j] += delta * r[j];
      best = std::max(best, sq_norm(w));
    }
    chunk_max[static_cast<std::size_t>(c)] = best;
  }
  return *std::max_element(chunk_max.begin(), chunk_max.end());
}

namespace serial {

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
    out[i] = s;
  }
}

void matvec_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[j] += a[i * cols + j] * y[i];
  }
}

double max_sq_norm_over_box_vertices(std::span<const double> a, std::size_t rows,
                                     std::size_t cols, std::span<const double> lo,
                                     std::span<const double> hi) {
  double best = 0.0;
  std::vector<double> v(rows);
  std::vector<double> w(cols);
  const std::uint64_t total = std::uint64_t{1} << rows;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < rows; ++i) v[i] = ((mask >> i) & 1U) ? hi[i] : lo[i];
    matvec_transposed(a, rows, cols, v, w);
    best = std::max(best, sq_norm(w));
  }
  return best;
}

}  // namespace serial
}  // namespace pdcg::kernels
