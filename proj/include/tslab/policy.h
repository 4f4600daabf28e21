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

#ifndef TSLAB_POLICY_H_
#define TSLAB_POLICY_H_

#include <cstdint>
#include <string>
#include <variant>

#include "Eigen/Core"
#include "tslab/arm_set.h"
#include "tslab/confidence.h"
#include "tslab/glm.h"
#include "tslab/linalg.h"
#include "tslab/rng.h"
#include "tslab/ts_distribution.h"

namespace tslab {

// Known penalty c(x) of a regularized linear optimization problem
// f(x; theta) = x^T theta + w c(x), where w = pen_weight.
//   kQuadraticNorm  c(x) = -||x||^2 over all of R^d
//   kL1Box          c(x) = -||x||_1 over the box [-1/sqrt d, 1/sqrt d]^d
struct RloPenalty {
  enum class Kind { kQuadraticNorm, kL1Box };
  Kind kind = Kind::kQuadraticNorm;
  double pen_weight = 1.0;

  static RloPenalty QuadraticNorm(double pen_weight);
  static RloPenalty L1Box(double pen_weight);

  // f(x; theta).
  double Objective(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const;
};

// x*(theta) = argmax_x f(x; theta) and J(theta) = f(x*(theta); theta), both in
// closed form.
BestArm RloBest(const RloPenalty& penalty, const Eigen::VectorXd& theta);

struct Selection {
  Eigen::VectorXd theta_tilde;
  Eigen::VectorXd arm;
  Eigen::VectorXd eta;
  // Index into the arm set when it is enumerable, else -1.
  std::int64_t arm_index = -1;
};

struct LinTsSpec {
  TSDistribution dist;
};
struct GlmTsSpec {
  TSDistribution dist;
  LinkFunction link;
};
struct RloTsSpec {
  TSDistribution dist;
  RloPenalty penalty;
};
struct GreedySpec {};
struct EpsGreedySpec {
  double eps = 0.1;
};

using PolicySpec =
    std::variant<LinTsSpec, GlmTsSpec, RloTsSpec, GreedySpec, EpsGreedySpec>;

std::string PolicyName(const PolicySpec& policy);
// The perturbation law of a TS policy; nullptr for the baselines.
const TSDistribution* PolicyDistribution(const PolicySpec& policy);

// theta_tilde = theta_hat + scale * V^{-1/2} eta with eta drawn from dist.
Selection PerturbEstimate(const DesignState& state,
                          const Eigen::VectorXd& theta_hat, double scale,
                          const TSDistribution& dist, Rng& rng);

// Linear Thompson sampling: perturb the RLS estimate with radius
// beta_t(delta') and play the best arm for the perturbed parameter. t is the
// number of observations absorbed so far.
Selection TsSelect(const DesignState& state, const ConfidenceParams& params,
                   const TSDistribution& dist, const ArmSet& set, Rng& rng);

struct GlmSelection {
  Selection selection;
  Eigen::VectorXd estimate;
  // The estimator failed this step and `estimate` is the caller's fallback.
  bool fallback = false;
};

// TS for generalized linear rewards: the GLM estimate is perturbed with
// radius beta_t(delta') / c_mu. On estimator failure the fallback estimate is
// used instead and the step is flagged. An empty history uses the fallback
// without calling the estimator (and is not flagged).
GlmSelection GlmTsSelect(const GlmHistory& history, const DesignState& state,
                         const ConfidenceParams& params,
                         const TSDistribution& dist, const LinkFunction& link,
                         const ArmSet& set, const Eigen::VectorXd& fallback,
                         Rng& rng);

// TS for regularized linear optimization: same perturbation as TsSelect, arm
// chosen by RloBest.
Selection RloTsSelect(const DesignState& state, const ConfidenceParams& params,
                      const TSDistribution& dist, const RloPenalty& penalty,
                      Rng& rng);

// Best arm for the RLS estimate; eta is zero and theta_tilde = theta_hat.
Selection GreedySelect(const DesignState& state, const ArmSet& set);

// GreedySelect, except that with probability eps a uniformly random arm is
// played instead.
Selection EpsGreedySelect(const DesignState& state, const ArmSet& set,
                          double eps, Rng& rng);

}  // namespace tslab

#endif  // TSLAB_POLICY_H_
