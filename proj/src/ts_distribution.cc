// Copyright 2026 The TSLab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tslab/ts_distribution.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "tslab/errors.h"

namespace tslab {
namespace {

void CheckDim(int dim) {
  if (dim < 1) throw InvalidArgument("TSDistribution: dim must be >= 1");
}

Eigen::VectorXd StandardNormal(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd g(dim);
  for (int i = 0; i < dim; ++i) g(i) = normal(rng);
  return g;
}

Eigen::VectorXd UniformDirection(int dim, Rng& rng) {
  Eigen::VectorXd g = StandardNormal(dim, rng);
  double norm = g.norm();
  while (norm == 0.0) {
    g = StandardNormal(dim, rng);
    norm = g.norm();
  }
  return g / norm;
}

}  // namespace

TSDistribution TSDistribution::GaussianStd(int dim) {
  CheckDim(dim);
  return TSDistribution(Kind::kGaussianStd, dim);
}

TSDistribution TSDistribution::UniformBallSqrtD(int dim) {
  CheckDim(dim);
  return TSDistribution(Kind::kUniformBallSqrtD, dim);
}

TSDistribution TSDistribution::UniformSphereSqrtD(int dim) {
  CheckDim(dim);
  return TSDistribution(Kind::kUniformSphereSqrtD, dim);
}

TSDistribution TSDistribution::Fixed(Eigen::VectorXd eta) {
  CheckDim(static_cast<int>(eta.size()));
  if (!eta.allFinite()) throw InvalidArgument("TSDistribution: non-finite eta");
  const int dim = static_cast<int>(eta.size());
  return TSDistribution(Kind::kFixed, dim, std::move(eta));
}

TSDistribution TSDistribution::FromName(std::string_view name, int dim) {
  if (name == "gaussian") return GaussianStd(dim);
  if (name == "uniform_ball") return UniformBallSqrtD(dim);
  if (name == "uniform_sphere") return UniformSphereSqrtD(dim);
  if (name == "zero") {
    CheckDim(dim);
    return Fixed(Eigen::VectorXd::Zero(dim));
  }
  throw InvalidArgument("unknown distribution '" + std::string(name) + "'");
}

std::string TSDistribution::name() const {
  switch (kind_) {
    case Kind::kGaussianStd:
      return "gaussian";
    case Kind::kUniformBallSqrtD:
      return "uniform_ball";
    case Kind::kUniformSphereSqrtD:
      return "uniform_sphere";
    case Kind::kFixed:
      return fixed_.isZero(0.0) ? "zero" : "fixed";
  }
  return "?";
}

double TSDistribution::c() const {
  return kind_ == Kind::kGaussianStd ? 2.0 : 1.0;
}

double TSDistribution::c_prime() const {
  return kind_ == Kind::kGaussianStd ? 2.0
                                     : std::numbers::e / static_cast<double>(dim_);
}

Eigen::VectorXd TSDistribution::Sample(Rng& rng) const {
  const double sqrt_d = std::sqrt(static_cast<double>(dim_));
  switch (kind_) {
    case Kind::kGaussianStd:
      return StandardNormal(dim_, rng);
    case Kind::kUniformBallSqrtD: {
      // Radius by CDF inversion: P(r <= s) = (s / sqrt d)^d.
      Eigen::VectorXd dir = UniformDirection(dim_, rng);
      const double radius =
          sqrt_d * std::pow(Uniform01(rng), 1.0 / static_cast<double>(dim_));
      return radius * dir;
    }
    case Kind::kUniformSphereSqrtD:
      return sqrt_d * UniformDirection(dim_, rng);
    case Kind::kFixed:
      return fixed_;
  }
  return {};
}

double TSDistribution::ConcentrationRadius(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("ConcentrationRadius: delta must lie in (0, 1)");
  }
  const double d = static_cast<double>(dim_);
  const double ratio = c_prime() * d / delta;
  if (!(ratio > 1.0)) {
    throw InvalidArgument(
        "ConcentrationRadius: c' d / delta <= 1, the bound is vacuous");
  }
  return std::sqrt(c() * d * std::log(ratio));
}

bool TSDistribution::HasAnticoncentrationBound() const {
  return kind_ == Kind::kGaussianStd || kind_ == Kind::kUniformBallSqrtD;
}

double TSDistribution::AnticoncentrationBound() const {
  using std::numbers::e;
  using std::numbers::pi;
  switch (kind_) {
    case Kind::kGaussianStd:
      return 1.0 / (4.0 * std::sqrt(e * pi));
    case Kind::kUniformBallSqrtD:
      return 1.0 / (16.0 * std::sqrt(6.0 * pi));
    default:
      break;
  }
  throw Unsupported("no closed-form anti-concentration constant for '" +
                    name() + "'");
}

}  // namespace tslab
