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

#ifndef TSLAB_CONFIDENCE_H_
#define TSLAB_CONFIDENCE_H_

#include <cstdint>

#include "Eigen/Core"
#include "tslab/linalg.h"
#include "tslab/ts_distribution.h"

namespace tslab {

// Problem constants shared by the estimators and the policies.
//   noise_scale  R, the sub-Gaussian constant of the reward noise
//   param_bound  S, a known bound on ||theta*||
//   lambda       ridge regularizer
//   delta        global confidence level
//   horizon      T
// delta_prime() = delta / (4T) is the per-step level used everywhere in the
// algorithm and in the event diagnostics.
class ConfidenceParams {
 public:
  ConfidenceParams(double noise_scale, double param_bound, double lambda,
                   double delta, std::int64_t horizon);

  double noise_scale() const { return noise_scale_; }
  double param_bound() const { return param_bound_; }
  double lambda() const { return lambda_; }
  double delta() const { return delta_; }
  std::int64_t horizon() const { return horizon_; }
  double delta_prime() const { return delta_prime_; }

 private:
  double noise_scale_;
  double param_bound_;
  double lambda_;
  double delta_;
  std::int64_t horizon_;
  double delta_prime_;
};

// RLS confidence radius after t observations in dimension dim:
//   R * sqrt(d log((lambda + t) / lambda) + 2 log(1/delta)) + sqrt(lambda) S.
double BetaT(const ConfidenceParams& params, int dim, std::int64_t t,
             double delta);

// TS radius: BetaT(params, d, t, delta') * dist.ConcentrationRadius(delta).
double GammaT(const ConfidenceParams& params, const TSDistribution& dist,
              std::int64_t t, double delta);

// theta_hat = V^{-1} b.
Eigen::VectorXd RlsEstimate(const DesignState& state);

// ||theta - center||_V <= radius, using V itself (not its inverse).
bool InEllipsoid(const DesignState& state, const Eigen::VectorXd& center,
                 const Eigen::VectorXd& theta, double radius);

}  // namespace tslab

#endif  // TSLAB_CONFIDENCE_H_
