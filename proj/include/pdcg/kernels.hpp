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
#include <span>

namespace pdcg::kernels {

// Work (multiply-adds) below which the OpenMP kernels run on one thread.
inline constexpr std::size_t kParallelMinWork = std::size_t{1} << 15;

// out = A x for a row-major rows x cols matrix. Each output entry is
// accumulated in the same order as the serial kernel, so results are
// bit-identical for every thread count.
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out);

// out = A^T y, parallel over output columns.
void matvec_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out);

// max over vertices v of the box prod_i [lo_i, hi_i] of ||A^T v||^2, by
// Gray-code enumeration (one rank-one update per vertex). rows <= 30.
double max_sq_norm_over_box_vertices(std::span<const double> a, std::size_t rows,
                                     std::size_t cols, std::span<const double> lo,
                                     std::span<const double> hi);

// Straightforward single-threaded versions kept as the reference the
// parallel kernels are tested and benchmarked against.
namespace serial {

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out);

void matvec_transposed(std::span<const double> a, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out);

// Enumerates every vertex independently and recomputes A^T v from scratch.
double max_sq_norm_over_box_vertices(std::span<const double> a, std::size_t rows,
                                     std::size_t cols, std::span<const double> lo,
                                     std::span<const double> hi);

}  // namespace serial
}  // namespace pdcg::kernels
