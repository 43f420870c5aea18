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

#include "pdcg/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdcg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSimplexSumTol = 1e-10;
// Entropy terms x log x are clamped to zero below this value.
constexpr double kTinyMass = 1e-300;

double xlogx(double x) { return x <= kTinyMass ? 0.0 : x * std::log(x); }

double logsumexp(ConstSpan z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

Vector softmax(ConstSpan z) {
  const double m = *std::max_element(z.begin(), z.end());
  Vector out(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = std::exp(z[i] - m);
    s += out[i];
  }
  for (double& v : out) v /= s;
  return out;
}

// log(1 + e^u) without overflow.
double softplus(double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// beta log beta + (1 - beta) log(1 - beta) on [0, 1], with 0 log 0 = 0.
double binary_neg_entropy(double beta) {
  if (beta <= 0.0 || beta >= 1.0) return 0.0;
  return xlogx(beta) + (1.0 - beta) * std::log1p(-beta);
}

void check_labels(const Vector& labels) {
  for (double b : labels) {
    if (b != 1.0 && b != -1.0) throw ConfigError("labels must be +1 or -1");
  }
}

void check_scale(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("loss scale must be positive and finite");
}

}  // namespace

std::string to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::SquaredL2: return "squared_l2";
    case RegularizerKind::SquaredL2Box: return "squared_l2_box";
    case RegularizerKind::NegativeEntropySimplex: return "entropy";
  }
  return "unknown";
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::Hinge: return "hinge";
    case LossKind::LeastAbsoluteDeviation: return "lad";
    case LossKind::Logistic: return "logistic";
    case LossKind::DualNormGauge: return "gauge";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Regularizer

Regularizer Regularizer::squared_l2(std::size_t dim, double mu) {
  if (dim == 0) throw ConfigError("regularizer dimension must be positive");
  if (!std::isfinite(mu)) throw ConfigError("regularizer modulus must be finite");
  return {RegularizerKind::SquaredL2, dim, mu};
}

Regularizer Regularizer::squared_l2_box(double mu, Vector lower, Vector upper) {
  if (lower.empty()) throw ConfigError("regularizer dimension must be positive");
  if (lower.size() != upper.size()) throw DimensionError("box bounds have different lengths");
  if (!std::isfinite(mu)) throw ConfigError("regularizer modulus must be finite");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw ConfigError("box bounds must be finite with lower <= upper");
    }
  }
  Regularizer r(RegularizerKind::SquaredL2Box, lower.size(), mu);
  r.lower_ = std::move(lower);
  r.upper_ = std::move(upper);
  return r;
}

Regularizer Regularizer::negative_entropy_simplex(std::size_t dim) {
  if (dim == 0) throw ConfigError("regularizer dimension must be positive");
  Regularizer r(RegularizerKind::NegativeEntropySimplex, dim, 1.0);
  r.lower_.assign(dim, 0.0);
  r.upper_.assign(dim, 1.0);
  return r;
}

void Regularizer::check_dim(ConstSpan v, const char* what) const {
  if (v.size() != dim_) {
    throw DimensionError(std::string(what) + ": regularizer has dimension " + std::to_string(dim_) +
                         ", argument has length " + std::to_string(v.size()));
  }
}

bool Regularizer::contains(ConstSpan x, double tol) const {
  check_dim(x, "Regularizer::contains");
  if (!all_finite(x)) return false;
  switch (kind_) {
    case RegularizerKind::SquaredL2:
      return true;
    case RegularizerKind::SquaredL2Box:
      for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
      }
      return true;
    case RegularizerKind::NegativeEntropySimplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < -tol) return false;
        s += v;
      }
      return std::abs(s - 1.0) <= std::max(tol, kSimplexSumTol);
    }
  }
  return false;
}

double Regularizer::value(ConstSpan x) const {
  if (!contains(x)) return kInf;
  switch (kind_) {
    case RegularizerKind::SquaredL2:
    case RegularizerKind::SquaredL2Box:
      return 0.5 * mu_ * squared_norm(x);
    case RegularizerKind::NegativeEntropySimplex: {
      double s = 0.0;
      for (double v : x) s += xlogx(v);
      return s;
    }
  }
  return kInf;
}

double Regularizer::conj_value(ConstSpan z) const {
  check_dim(z, "Regularizer::conj_value");
  switch (kind_) {
    case RegularizerKind::SquaredL2:
      return squared_norm(z) / (2.0 * mu_);
    case RegularizerKind::SquaredL2Box: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double xi = std::clamp(z[i] / mu_, lower_[i], upper_[i]);
        s += xi * z[i] - 0.5 * mu_ * xi * xi;
      }
      return s;
    }
    case RegularizerKind::NegativeEntropySimplex:
      return logsumexp(z);
  }
  return kInf;
}

Vector Regularizer::conj_grad(ConstSpan z) const {
  check_dim(z, "Regularizer::conj_grad");
  switch (kind_) {
    case RegularizerKind::SquaredL2:
      return scaled(1.0 / mu_, z);
    case RegularizerKind::SquaredL2Box: {
      Vector x(dim_);
      for (std::size_t i = 0; i < dim_; ++i) x[i] = std::clamp(z[i] / mu_, lower_[i], upper_[i]);
      return x;
    }
    case RegularizerKind::NegativeEntropySimplex:
      return softmax(z);
  }
  return {};
}

Vector Regularizer::subgradient(ConstSpan x) const {
  check_dim(x, "Regularizer::subgradient");
  switch (kind_) {
    case RegularizerKind::SquaredL2:
      return scaled(mu_, x);
    case RegularizerKind::SquaredL2Box:
      if (!contains(x)) throw DomainError("Regularizer::subgradient: point outside the box");
      return scaled(mu_, x);
    case RegularizerKind::NegativeEntropySimplex: {
      if (!contains(x)) throw DomainError("Regularizer::subgradient: point not on the simplex");
      Vector g(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        if (!(x[i] > 0.0)) throw DomainError("Regularizer::subgradient: entropy at a zero coordinate");
        g[i] = std::log(x[i]) + 1.0;
      }
      return g;
    }
  }
  return {};
}

double Regularizer::bregman(ConstSpan x1, ConstSpan x2) const {
  check_dim(x1, "Regularizer::bregman");
  check_dim(x2, "Regularizer::bregman");
  switch (kind_) {
    case RegularizerKind::SquaredL2:
    case RegularizerKind::SquaredL2Box: {
      if (!contains(x2)) throw DomainError("Regularizer::bregman: second point outside K");
      if (!contains(x1)) return kInf;
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += (x1[i] - x2[i]) * (x1[i] - x2[i]);
      return 0.5 * mu_ * s;
    }
    case RegularizerKind::NegativeEntropySimplex: {
      if (!contains(x2)) throw DomainError("Regularizer::bregman: second point not on the simplex");
      for (double v : x2) {
        if (!(v > 0.0)) throw DomainError("Regularizer::bregman: second point on the simplex boundary");
      }
      if (!contains(x1)) return kInf;
      // Generalized KL; the mass terms cancel on the simplex up to round-off.
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double a = std::max(x1[i], 0.0);
        if (a > kTinyMass) s += a * (std::log(a) - std::log(x2[i]));
        s += x2[i] - a;
      }
      return std::max(s, 0.0);
    }
  }
  return kInf;
}

double Regularizer::bregman_with(ConstSpan x1, ConstSpan x2, ConstSpan sub2) const {
  check_dim(sub2, "Regularizer::bregman_with");
  const double h1 = value(x1);
  if (!std::isfinite(h1)) return kInf;
  const double h2 = value(x2);
  if (!std::isfinite(h2)) throw DomainError("Regularizer::bregman_with: second point outside K");
  double lin = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) lin += (x1[i] - x2[i]) * sub2[i];
  return h1 - h2 - lin;
}

double Regularizer::support(ConstSpan z) const {
  check_dim(z, "Regularizer::support");
  switch (kind_) {
    case RegularizerKind::SquaredL2:
      throw ConfigError("support function of an unbounded domain");
    case RegularizerKind::SquaredL2Box: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += std::max(lower_[i] * z[i], upper_[i] * z[i]);
      return s;
    }
    case RegularizerKind::NegativeEntropySimplex:
      return *std::max_element(z.begin(), z.end());
  }
  return kInf;
}

// ---------------------------------------------------------------------------
// Loss

Loss Loss::hinge(Vector labels, double scale) {
  if (labels.empty()) throw ConfigError("loss dimension must be positive");
  check_labels(labels);
  check_scale(scale);
  Loss l(LossKind::Hinge, labels.size());
  l.data_ = std::move(labels);
  l.scale_ = scale;
  l.build_dual_box();
  return l;
}

Loss Loss::least_absolute_deviation(Vector targets, double scale) {
  if (targets.empty()) throw ConfigError("loss dimension must be positive");
  if (!all_finite(targets)) throw ConfigError("targets must be finite");
  check_scale(scale);
  Loss l(LossKind::LeastAbsoluteDeviation, targets.size());
  l.data_ = std::move(targets);
  l.scale_ = scale;
  l.build_dual_box();
  return l;
}

Loss Loss::logistic(Vector labels, double scale) {
  if (labels.empty()) throw ConfigError("loss dimension must be positive");
  check_labels(labels);
  check_scale(scale);
  Loss l(LossKind::Logistic, labels.size());
  l.data_ = std::move(labels);
  l.scale_ = scale;
  l.build_dual_box();
  return l;
}

Loss Loss::dual_norm_gauge(std::size_t dim, double radius, double penalty) {
  if (dim == 0) throw ConfigError("loss dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("gauge radius must be positive");
  if (!(penalty >= 0.0) || !std::isfinite(penalty)) throw ConfigError("gauge penalty must be >= 0");
  Loss l(LossKind::DualNormGauge, dim);
  l.radius_ = radius;
  l.penalty_ = penalty;
  return l;
}

void Loss::build_dual_box() {
  dual_lower_.assign(dim_, 0.0);
  dual_upper_.assign(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (kind_ == LossKind::LeastAbsoluteDeviation) {
      dual_lower_[i] = -scale_;
      dual_upper_[i] = scale_;
    } else {
      const double end = -scale_ * data_[i];
      dual_lower_[i] = std::min(0.0, end);
      dual_upper_[i] = std::max(0.0, end);
    }
  }
}

void Loss::check_dim(ConstSpan v, const char* what) const {
  if (v.size() != dim_) {
    throw DimensionError(std::string(what) + ": loss has dimension " + std::to_string(dim_) +
                         ", argument has length " + std::to_string(v.size()));
  }
}

const Vector& Loss::dual_lower() const {
  if (!is_separable()) throw ConfigError("dual domain of the gauge loss is not a box");
  return dual_lower_;
}

const Vector& Loss::dual_upper() const {
  if (!is_separable()) throw ConfigError("dual domain of the gauge loss is not a box");
  return dual_upper_;
}

bool Loss::dual_contains(ConstSpan y, double tol) const {
  check_dim(y, "Loss::dual_contains");
  if (!all_finite(y)) return false;
  if (kind_ == LossKind::DualNormGauge) {
    double l1 = 0.0;
    for (double v : y) l1 += std::abs(v);
    return l1 <= radius_ + tol * std::max(1.0, radius_);
  }
  const double t = tol * std::max(1.0, scale_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (y[i] < dual_lower_[i] - t || y[i] > dual_upper_[i] + t) return false;
  }
  return true;
}

double Loss::lipschitz() const {
  if (kind_ == LossKind::DualNormGauge) return radius_;
  return scale_ * std::sqrt(static_cast<double>(dim_));
}

double Loss::value(ConstSpan z) const {
  check_dim(z, "Loss::value");
  double s = 0.0;
  switch (kind_) {
    case LossKind::Hinge:
      for (std::size_t i = 0; i < dim_; ++i) s += std::max(1.0 - data_[i] * z[i], 0.0);
      return scale_ * s;
    case LossKind::LeastAbsoluteDeviation:
      for (std::size_t i = 0; i < dim_; ++i) s += std::abs(z[i] - data_[i]);
      return scale_ * s;
    case LossKind::Logistic:
      for (std::size_t i = 0; i < dim_; ++i) s += softplus(-data_[i] * z[i]);
      return scale_ * s;
    case LossKind::DualNormGauge:
      return radius_ * std::max(max_abs(z) - penalty_, 0.0);
  }
  return kInf;
}

double Loss::conj_value(ConstSpan y) const {
  if (!dual_contains(y)) return kInf;
  double s = 0.0;
  if (kind_ == LossKind::DualNormGauge) {
    for (double v : y) s += std::abs(v);
    return penalty_ * s;
  }
  for (std::size_t i = 0; i < dim_; ++i) s += coordinate_conj_value(i, y[i]);
  return s;
}

double Loss::coordinate_conj_value(std::size_t i, double yi) const {
  const double yc = std::clamp(yi, dual_lower_[i], dual_upper_[i]);
  switch (kind_) {
    case LossKind::Hinge:
      return -std::abs(yc);
    case LossKind::LeastAbsoluteDeviation:
      return yc * data_[i];
    case LossKind::Logistic:
      return scale_ * binary_neg_entropy(-data_[i] * yc / scale_);
    case LossKind::DualNormGauge:
      break;
  }
  throw ConfigError("coordinate conjugate requires a separable loss");
}

double Loss::coordinate_conj_derivative(std::size_t i, double yi) const {
  switch (kind_) {
    case LossKind::Hinge:
      return data_[i];
    case LossKind::LeastAbsoluteDeviation:
      return data_[i];
    case LossKind::Logistic: {
      const double beta = std::clamp(-data_[i] * yi / scale_, 0.0, 1.0);
      if (beta <= 0.0) return data_[i] * kInf;
      if (beta >= 1.0) return -data_[i] * kInf;
      return -data_[i] * (std::log(beta) - std::log1p(-beta));
    }
    case LossKind::DualNormGauge:
      break;
  }
  throw ConfigError("coordinate conjugate requires a separable loss");
}

Vector Loss::subgradient(ConstSpan z) const {
  check_dim(z, "Loss::subgradient");
  Vector y(dim_, 0.0);
  switch (kind_) {
    case LossKind::Hinge:
      for (std::size_t i = 0; i < dim_; ++i) {
        // Ties at the kink go to the margin-active extreme.
        if (1.0 - data_[i] * z[i] >= 0.0) y[i] = -scale_ * data_[i];
      }
      break;
    case LossKind::LeastAbsoluteDeviation:
      for (std::size_t i = 0; i < dim_; ++i) y[i] = scale_ * sign(z[i] - data_[i]);
      break;
    case LossKind::Logistic:
      for (std::size_t i = 0; i < dim_; ++i) y[i] = -scale_ * data_[i] * sigmoid(-data_[i] * z[i]);
      break;
    case LossKind::DualNormGauge: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < dim_; ++i) {
        if (std::abs(z[i]) > std::abs(z[best])) best = i;
      }
      if (std::abs(z[best]) > penalty_) y[best] = radius_ * sign(z[best]);
      break;
    }
  }
  return y;
}

}  // namespace pdcg
