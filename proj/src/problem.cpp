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

#include "pdcg/problem.hpp"

#include <string>

namespace pdcg {

const ProblemInstance& validate_instance(const ProblemInstance& problem,
                                         bool require_strong_convexity) {
  if (problem.op.rows() == 0 || problem.op.cols() == 0) {
    throw DimensionError("operator: empty shape");
  }
  if (problem.regularizer.dim() != problem.op.cols()) {
    throw DimensionError("regularizer: dimension " + std::to_string(problem.regularizer.dim()) +
                         " does not match operator columns " + std::to_string(problem.op.cols()));
  }
  if (problem.loss.dim() != problem.op.rows()) {
    throw DimensionError("loss: dimension " + std::to_string(problem.loss.dim()) +
                         " does not match operator rows " + std::to_string(problem.op.rows()));
  }
  if (require_strong_convexity && !(problem.regularizer.modulus() > 0.0)) {
    throw ConfigError("regularizer: modulus must be positive, got " +
                      std::to_string(problem.regularizer.modulus()));
  }
  return problem;
}

}  // namespace pdcg
