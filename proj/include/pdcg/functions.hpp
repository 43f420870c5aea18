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
#include <string>

#include "pdcg/core.hpp"

namespace pdcg {

// Membership tolerance for domain tests (K and the closure of C).
inline constexpr double kDomainTol = 1e-12;

enum class RegularizerKind { SquaredL2, SquaredL2Box, NegativeEntropySimplex };

std::string to_string(RegularizerKind kind);

// Strongly convex h on R^p with its conjugate and Bregman geometry.
//
//   SquaredL2          h(x) = mu/2 ||x||^2,             K = R^p
//   SquaredL2Box       h(x) = mu/2 ||x||^2 + I_box(x),   K = [lower, upper]
//   NegativeEntropy    h(x) = sum x_i log x_i + I_simplex, mu = 1
class Regularizer {
 public:
  static Regularizer squared_l2(std::size_t dim, double mu);
  static Regularizer squared_l2_box(double mu, Vector lower, Vector upper);
  static Regularizer negative_entropy_simplex(std::size_t dim);

  RegularizerKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double modulus() const { return mu_; }
  bool is_compact() const { return kind_ != RegularizerKind::SquaredL2; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(ConstSpan x, double tol = kDomainTol) const;

  // h(x); +inf outside K.
  double value(ConstSpan x) const;
  // h*(z) = max_x <x,z> - h(x).
  double conj_value(ConstSpan z) const;
  // (h*)'(z), the unique maximizer of <x,z> - h(x). Always lands in K.
  Vector conj_grad(ConstSpan z) const;
  // An element of dh(x). Throws DomainError at the entropy boundary.
  Vector subgradient(ConstSpan x) const;
  // D(x1, x2) with h'(x2) = subgradient(x2). +inf when x1 is outside K.
  double bregman(ConstSpan x1, ConstSpan x2) const;
  // D(x1, x2) using a caller-supplied element of dh(x2), e.g. the
  // subgradient carried by mirror descent.
  double bregman_with(ConstSpan x1, ConstSpan x2, ConstSpan sub2) const;
  // sigma_K(z) = max_{x in K} <x,z>. Throws ConfigError when K is unbounded.
  double support(ConstSpan z) const;

 private:
  Regularizer(RegularizerKind kind, std::size_t dim, double mu) : kind_(kind), dim_(dim), mu_(mu) {}
  void check_dim(ConstSpan v, const char* what) const;

  RegularizerKind kind_;
  std::size_t dim_;
  double mu_;
  Vector lower_;
  Vector upper_;
};

enum class LossKind { Hinge, LeastAbsoluteDeviation, Logistic, DualNormGauge };

std::string to_string(LossKind kind);

// Lipschitz loss f on R^n whose conjugate has bounded domain C.
//
// Separable kinds use f(z) = s * sum_i l_i(z_i) with conjugate
// f*(y) = s * sum_i l_i*(y_i / s), so C is a box scaled by s.
// DualNormGauge uses f(z) = radius * max(||z||_inf - penalty, 0), whose
// conjugate is penalty * ||y||_1 restricted to the l1-ball of the radius.
class Loss {
 public:
  static Loss hinge(Vector labels, double scale);
  static Loss least_absolute_deviation(Vector targets, double scale);
  static Loss logistic(Vector labels, double scale);
  static Loss dual_norm_gauge(std::size_t dim, double radius, double penalty);

  LossKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool is_separable() const { return kind_ != LossKind::DualNormGauge; }
  double scale() const { return scale_; }
  // Labels (hinge, logistic) or targets (LAD).
  const Vector& data() const { return data_; }
  double radius() const { return radius_; }
  double penalty() const { return penalty_; }

  // Closure of C as a box (separable kinds only).
  const Vector& dual_lower() const;
  const Vector& dual_upper() const;
  bool dual_contains(ConstSpan y, double tol = kDomainTol) const;
  // B = sup_{y in C} ||y||.
  double lipschitz() const;

  double value(ConstSpan z) const;
  // f*(y); +inf outside the closure of C.
  double conj_value(ConstSpan y) const;
  // Deterministic maximizer of <y,z> - f*(y) over C.
  Vector subgradient(ConstSpan z) const;

  // Per-coordinate conjugate s * l_i*(y_i / s) and its derivative on the
  // interior of [dual_lower_i, dual_upper_i]. Separable kinds only.
  double coordinate_conj_value(std::size_t i, double yi) const;
  double coordinate_conj_derivative(std::size_t i, double yi) const;

 private:
  Loss(LossKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
  void check_dim(ConstSpan v, const char* what) const;
  void build_dual_box();

  LossKind kind_;
  std::size_t dim_;
  double scale_ = 1.0;
  Vector data_;
  double radius_ = 0.0;
  double penalty_ = 0.0;
  Vector dual_lower_;
  Vector dual_upper_;
};

}  // namespace pdcg
