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

#include "tslab/policy.h"

#include <cmath>

#include "tslab/errors.h"

namespace tslab {

RloPenalty RloPenalty::QuadraticNorm(double pen_weight) {
  if (!(pen_weight > 0.0)) {
    throw InvalidArgument("RloPenalty: pen_weight must be positive");
  }
  return {Kind::kQuadraticNorm, pen_weight};
}

RloPenalty RloPenalty::L1Box(double pen_weight) {
  if (!(pen_weight > 0.0)) {
    throw InvalidArgument("RloPenalty: pen_weight must be positive");
  }
  return {Kind::kL1Box, pen_weight};
}

double RloPenalty::Objective(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& theta) const {
  const double penalty = kind == Kind::kQuadraticNorm ? x.squaredNorm()
                                                      : x.lpNorm<1>();
  return x.dot(theta) - pen_weight * penalty;
}

BestArm RloBest(const RloPenalty& penalty, const Eigen::VectorXd& theta) {
  if (!theta.allFinite()) throw InvalidArgument("RloBest: non-finite theta");
  const double w = penalty.pen_weight;
  BestArm best;
  if (penalty.kind == RloPenalty::Kind::kQuadraticNorm) {
    best.arm = theta / (2.0 * w);
    best.value = theta.squaredNorm() / (4.0 * w);
    return best;
  }
  // Box-constrained soft thresholding, coordinate by coordinate.
  const double half_width = 1.0 / std::sqrt(static_cast<double>(theta.size()));
  best.arm = Eigen::VectorXd::Zero(theta.size());
  best.value = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double excess = std::fabs(theta(i)) - w;
    if (excess > 0.0) {
      best.arm(i) = theta(i) > 0.0 ? half_width : -half_width;
      best.value += excess * half_width;
    }
  }
  return best;
}

std::string PolicyName(const PolicySpec& policy) {
  struct Namer {
    std::string operator()(const LinTsSpec&) const { return "lints"; }
    std::string operator()(const GlmTsSpec&) const { return "glmts"; }
    std::string operator()(const RloTsSpec&) const { return "rlots"; }
    std::string operator()(const GreedySpec&) const { return "greedy"; }
    std::string operator()(const EpsGreedySpec&) const { return "eps_greedy"; }
  };
  return std::visit(Namer{}, policy);
}

const TSDistribution* PolicyDistribution(const PolicySpec& policy) {
  if (const auto* p = std::get_if<LinTsSpec>(&policy)) return &p->dist;
  if (const auto* p = std::get_if<GlmTsSpec>(&policy)) return &p->dist;
  if (const auto* p = std::get_if<RloTsSpec>(&policy)) return &p->dist;
  return nullptr;
}

Selection PerturbEstimate(const DesignState& state,
                          const Eigen::VectorXd& theta_hat, double scale,
                          const TSDistribution& dist, Rng& rng) {
  if (dist.dim() != state.dim() || theta_hat.size() != state.dim()) {
    throw InvalidArgument("TS selection: dimension mismatch");
  }
  Selection s;
  s.eta = dist.Sample(rng);
  s.theta_tilde = theta_hat + scale * (state.V_inv_sqrt() * s.eta);
  return s;
}

Selection TsSelect(const DesignState& state, const ConfidenceParams& params,
                   const TSDistribution& dist, const ArmSet& set, Rng& rng) {
  if (set.dim() != state.dim()) {
    throw InvalidArgument("TsSelect: arm set dimension mismatch");
  }
  const double beta =
      BetaT(params, state.dim(), state.t(), params.delta_prime());
  Selection s = PerturbEstimate(state, RlsEstimate(state), beta, dist, rng);
  BestArm best = set.Best(s.theta_tilde);
  s.arm = std::move(best.arm);
  s.arm_index = best.index;
  return s;
}

GlmSelection GlmTsSelect(const GlmHistory& history, const DesignState& state,
                         const ConfidenceParams& params,
                         const TSDistribution& dist, const LinkFunction& link,
                         const ArmSet& set, const Eigen::VectorXd& fallback,
                         Rng& rng) {
  if (set.dim() != state.dim() || history.dim() != state.dim()) {
    throw InvalidArgument("GlmTsSelect: dimension mismatch");
  }
  GlmSelection out;
  out.estimate = fallback;
  if (!history.empty()) {
    GlmOptions options;
    options.lambda = params.lambda();
    options.radius = 2.0 * params.param_bound();
    try {
      out.estimate = GlmEstimate(history, link, options, &fallback);
    } catch (const ConvergenceFailure&) {
      out.fallback = true;
    }
  }
  const double scale =
      BetaT(params, state.dim(), state.t(), params.delta_prime()) / link.c_mu;
  out.selection = PerturbEstimate(state, out.estimate, scale, dist, rng);
  // mu is strictly increasing, so argmax mu(x^T theta) = argmax x^T theta.
  BestArm best = set.Best(out.selection.theta_tilde);
  out.selection.arm = std::move(best.arm);
  out.selection.arm_index = best.index;
  return out;
}

Selection RloTsSelect(const DesignState& state, const ConfidenceParams& params,
                      const TSDistribution& dist, const RloPenalty& penalty,
                      Rng& rng) {
  const double beta =
      BetaT(params, state.dim(), state.t(), params.delta_prime());
  Selection s = PerturbEstimate(state, RlsEstimate(state), beta, dist, rng);
  s.arm = RloBest(penalty, s.theta_tilde).arm;
  return s;
}

Selection GreedySelect(const DesignState& state, const ArmSet& set) {
  if (set.dim() != state.dim()) {
    throw InvalidArgument("GreedySelect: arm set dimension mismatch");
  }
  Selection s;
  s.theta_tilde = RlsEstimate(state);
  s.eta = Eigen::VectorXd::Zero(state.dim());
  BestArm best = set.Best(s.theta_tilde);
  s.arm = std::move(best.arm);
  s.arm_index = best.index;
  return s;
}

Selection EpsGreedySelect(const DesignState& state, const ArmSet& set,
                          double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw InvalidArgument("EpsGreedySelect: eps must lie in [0, 1]");
  }
  Selection s = GreedySelect(state, set);
  if (Uniform01(rng) < eps) {
    BestArm pick = set.Sample(rng);
    s.arm = std::move(pick.arm);
    s.arm_index = pick.index;
  }
  return s;
}

}  // namespace tslab
