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

#ifndef TSLAB_TS_DISTRIBUTION_H_
#define TSLAB_TS_DISTRIBUTION_H_

#include <string>
#include <string_view>

#include "Eigen/Core"
#include "tslab/rng.h"

namespace tslab {

// Perturbation law for the sampled parameter
//   theta_tilde = theta_hat + beta * V^{-1/2} * eta,   eta ~ this distribution.
//
// A valid law puts probability >= p on {u^T eta >= 1} for every unit u, and
// has ||eta|| <= sqrt(c d log(c' d / delta)) with probability >= 1 - delta.
//
//   kGaussianStd          N(0, I_d);            c = 2, c' = 2, p = 1/(4 sqrt(e pi))
//   kUniformBallSqrtD     uniform on B(0,sqrt d); c = 1, c' = e/d,
//                                                p = 1/(16 sqrt(6 pi))
//   kUniformSphereSqrtD   uniform on the sphere of radius sqrt d; c = 1,
//                         c' = e/d, no closed-form p
//   kFixed                always returns the same vector. Used to force the
//                         perturbation in tests and as a negative control.
class TSDistribution {
 public:
  enum class Kind {
    kGaussianStd,
    kUniformBallSqrtD,
    kUniformSphereSqrtD,
    kFixed
  };

  static TSDistribution GaussianStd(int dim);
  static TSDistribution UniformBallSqrtD(int dim);
  static TSDistribution UniformSphereSqrtD(int dim);
  static TSDistribution Fixed(Eigen::VectorXd eta);
  // "gaussian", "uniform_ball", "uniform_sphere" or "zero".
  static TSDistribution FromName(std::string_view name, int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const;

  double c() const;
  double c_prime() const;

  Eigen::VectorXd Sample(Rng& rng) const;

  // sqrt(c d log(c' d / delta)). Throws InvalidArgument unless
  // delta in (0, 1) and c' d / delta > 1.
  double ConcentrationRadius(double delta) const;

  // Closed-form p; Unsupported for the sphere and fixed laws.
  double AnticoncentrationBound() const;
  bool HasAnticoncentrationBound() const;

 private:
  TSDistribution(Kind kind, int dim, Eigen::VectorXd fixed = {})
      : kind_(kind), dim_(dim), fixed_(std::move(fixed)) {}

  Kind kind_;
  int dim_;
  Eigen::VectorXd fixed_;
};

}  // namespace tslab

#endif  // TSLAB_TS_DISTRIBUTION_H_
