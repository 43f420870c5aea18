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

#include "pdcg/core.hpp"
#include "pdcg/functions.hpp"

namespace pdcg {

// min_x h(x) + f(Ax), with A of shape n x p.
struct ProblemInstance {
  LinearOperator op;
  Regularizer regularizer;
  Loss loss;

  std::size_t n() const { return op.rows(); }
  std::size_t p() const { return op.cols(); }
};

// Returns the instance when the shapes agree and, if requested, the
// regularizer modulus is positive. Throws DimensionError / ConfigError
// naming the offending field otherwise.
const ProblemInstance& validate_instance(const ProblemInstance& problem,
                                         bool require_strong_convexity = true);

}  // namespace pdcg
