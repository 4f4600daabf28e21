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

#include "tslab/confidence.h"

#include <cmath>

#include "tslab/errors.h"

namespace tslab {

ConfidenceParams::ConfidenceParams(double noise_scale, double param_bound,
                                   double lambda, double delta,
                                   std::int64_t horizon)
    : noise_scale_(noise_scale),
      param_bound_(param_bound),
      lambda_(lambda),
      delta_(delta),
      horizon_(horizon),
      delta_prime_(0.0) {
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw InvalidArgument("ConfidenceParams: R must be >= 0");
  }
  if (!(param_bound > 0.0) || !std::isfinite(param_bound)) {
    throw InvalidArgument("ConfidenceParams: S must be > 0");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("ConfidenceParams: lambda must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("ConfidenceParams: delta must lie in (0, 1)");
  }
  if (horizon < 1) throw InvalidArgument("ConfidenceParams: T must be >= 1");
  delta_prime_ = delta / (4.0 * static_cast<double>(horizon));
}

double BetaT(const ConfidenceParams& params, int dim, std::int64_t t,
             double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("BetaT: delta must lie in (0, 1)");
  }
  if (t < 0) throw InvalidArgument("BetaT: t must be >= 0");
  if (dim < 1) throw InvalidArgument("BetaT: dim must be >= 1");
  const double lambda = params.lambda();
  const double log_ratio =
      std::log1p(static_cast<double>(t) / lambda);  // log((lambda+t)/lambda)
  const double inner = dim * log_ratio + 2.0 * std::log(1.0 / delta);
  return params.noise_scale() * std::sqrt(inner) +
         std::sqrt(lambda) * params.param_bound();
}

double GammaT(const ConfidenceParams& params, const TSDistribution& dist,
              std::int64_t t, double delta) {
  return BetaT(params, dist.dim(), t, params.delta_prime()) *
         dist.ConcentrationRadius(delta);
}

Eigen::VectorXd RlsEstimate(const DesignState& state) {
  return state.V_inv() * state.b();
}

bool InEllipsoid(const DesignState& state, const Eigen::VectorXd& center,
                 const Eigen::VectorXd& theta, double radius) {
  return WeightedNorm(state.V(), theta - center) <= radius;
}

}  // namespace tslab
