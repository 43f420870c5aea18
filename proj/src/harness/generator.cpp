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
#include <numeric>
#include <random>

#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

Regularizer make_regularizer(const ProblemSpec& spec) {
  switch (spec.regularizer) {
    case RegularizerKind::SquaredL2:
      return Regularizer::squared_l2(spec.p, spec.mu);
    case RegularizerKind::SquaredL2Box:
      if (!(spec.box_lower < spec.box_upper)) {
        throw ConfigError("box_lower must be below box_upper");
      }
      return Regularizer::squared_l2_box(spec.mu, Vector(spec.p, spec.box_lower),
                                         Vector(spec.p, spec.box_upper));
    case RegularizerKind::NegativeEntropySimplex:
      if (spec.mu != 1.0) throw ConfigError("the entropy regularizer has mu = 1");
      return Regularizer::negative_entropy_simplex(spec.p);
  }
  throw ConfigError("unknown regularizer");
}

Vector random_point_in_domain(const ProblemSpec& spec, std::mt19937_64& rng) {
  Vector x(spec.p);
  switch (spec.regularizer) {
    case RegularizerKind::SquaredL2: {
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (double& v : x) v = gauss(rng);
      break;
    }
    case RegularizerKind::SquaredL2Box: {
      std::uniform_real_distribution<double> unif(spec.box_lower, spec.box_upper);
      for (double& v : x) v = unif(rng);
      break;
    }
    case RegularizerKind::NegativeEntropySimplex: {
      std::exponential_distribution<double> expo(1.0);
      for (double& v : x) v = expo(rng);
      const double total = std::accumulate(x.begin(), x.end(), 0.0);
      for (double& v : x) v /= total;
      break;
    }
  }
  return x;
}

}  // namespace

GeneratedProblem generate_problem_with_truth(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.n == 0 || spec.p == 0) throw ConfigError("problem dimensions n and p must be >= 1");
  if (!(spec.mu > 0.0) || !std::isfinite(spec.mu)) throw ConfigError("mu must be positive");
  const double s = spec.effective_scale();
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("scale must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = spec.n;
  const std::size_t p = spec.p;
  const double row_scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> a(n * p);

  GeneratedProblem g{{LinearOperator::identity(1), make_regularizer(spec),
                      Loss::dual_norm_gauge(1, 1.0, 0.0)},
                     {}, {}, {}};

  switch (spec.loss) {
    case LossKind::Hinge:
    case LossKind::Logistic: {
      std::bernoulli_distribution coin(0.5);
      const double shift = 0.5 / std::sqrt(static_cast<double>(p));
      Vector labels(n);
      for (std::size_t i = 0; i < n; ++i) {
        labels[i] = coin(rng) ? 1.0 : -1.0;
        for (std::size_t j = 0; j < p; ++j) {
          a[i * p + j] = (labels[i] * shift + gauss(rng)) * row_scale;
        }
      }
      g.instance.loss = spec.loss == LossKind::Hinge ? Loss::hinge(std::move(labels), s)
                                                     : Loss::logistic(std::move(labels), s);
      g.instance.op = LinearOperator(n, p, std::move(a));
      break;
    }
    case LossKind::LeastAbsoluteDeviation: {
      for (double& v : a) v = gauss(rng) * row_scale;
      g.instance.op = LinearOperator(n, p, std::move(a));
      g.x_true = random_point_in_domain(spec, rng);
      Vector targets = pdcg::apply(g.instance.op, g.x_true);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t count = std::max<std::size_t>(1, n / 10);
      std::bernoulli_distribution coin(0.5);
      order.resize(count);
      std::sort(order.begin(), order.end());
      for (std::size_t i : order) {
        const double v = coin(rng) ? 5.0 : -5.0;
        targets[i] += v;
        g.outlier_values.push_back(v);
      }
      g.outliers = std::move(order);
      g.instance.loss = Loss::least_absolute_deviation(std::move(targets), s);
      break;
    }
    case LossKind::DualNormGauge:
      for (double& v : a) v = gauss(rng) * row_scale;
      g.instance.op = LinearOperator(n, p, std::move(a));
      g.instance.loss = Loss::dual_norm_gauge(n, spec.gauge_radius, spec.gauge_penalty);
      break;
  }
  validate_instance(g.instance);
  return g;
}

ProblemInstance generate_problem(const ProblemSpec& spec, std::uint64_t seed) {
  return generate_problem_with_truth(spec, seed).instance;
}

}  // namespace pdcg
