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

#ifndef TSLAB_SIMULATOR_H_
#define TSLAB_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "tslab/arm_set.h"
#include "tslab/confidence.h"
#include "tslab/glm.h"
#include "tslab/linalg.h"
#include "tslab/policy.h"
#include "tslab/rng.h"

namespace tslab {

// Reward noise. kGaussian has standard deviation `scale`; kUniform is uniform
// on [-sqrt(3) scale, sqrt(3) scale]; both are scale-sub-Gaussian. kBernoulli
// draws 0/1 rewards with mean mu(x^T theta*) and needs a link with values in
// (0, 1); it is 1/2-sub-Gaussian.
struct NoiseSpec {
  enum class Kind { kGaussian, kUniform, kBernoulli };
  Kind kind = Kind::kGaussian;
  double scale = 1.0;
};

enum class ProblemKind { kLinear, kGlm, kRlo };

// Synthetic environment with a fixed parameter theta*.
//
// Payoff of action x under a parameter theta:
//   linear  x^T theta
//   glm     mu(x^T theta)
//   rlo     x^T theta + w c(x)
// Observations are always noisy versions of x^T theta* (or mu(x^T theta*)).
class Environment {
 public:
  static Environment Linear(Eigen::VectorXd theta_star, ArmSet set,
                            NoiseSpec noise);
  static Environment Glm(Eigen::VectorXd theta_star, ArmSet set,
                         LinkFunction link, NoiseSpec noise);
  static Environment Rlo(Eigen::VectorXd theta_star, RloPenalty penalty,
                         NoiseSpec noise);

  ProblemKind problem() const { return problem_; }
  int dim() const { return static_cast<int>(theta_star_.size()); }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  const NoiseSpec& noise() const { return noise_; }
  // Null for RLO problems.
  const ArmSet* arm_set() const { return set_ ? &*set_ : nullptr; }
  const LinkFunction* link() const { return link_ ? &*link_ : nullptr; }
  const RloPenalty* penalty() const { return penalty_ ? &*penalty_ : nullptr; }

  double MeanReward(const Eigen::VectorXd& x) const;
  double DrawReward(const Eigen::VectorXd& x, Rng& rng) const;

  double Payoff(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const;
  // Best achievable payoff under theta.
  double OptimalPayoff(const Eigen::VectorXd& theta) const;
  // J(theta): max_x x^T theta over the arm set (linear and glm) or
  // max_x f(x; theta) (rlo). Optimism is J(theta_tilde) >= J(theta*).
  double Support(const Eigen::VectorXd& theta) const;

 private:
  Environment(ProblemKind problem, Eigen::VectorXd theta_star, NoiseSpec noise)
      : problem_(problem), theta_star_(std::move(theta_star)), noise_(noise) {}

  ProblemKind problem_;
  Eigen::VectorXd theta_star_;
  NoiseSpec noise_;
  std::optional<ArmSet> set_;
  std::optional<LinkFunction> link_;
  std::optional<RloPenalty> penalty_;
};

// One row of the regret ledger. Regret terms and distances are stored as
// numbers; the event flags are derived from them on demand.
struct StepRecord {
  std::int64_t t = 0;  // 1-based
  std::int64_t arm_index = -1;
  Eigen::VectorXd arm;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd theta_tilde;
  Eigen::VectorXd eta;
  double reward = 0.0;

  double optimal_payoff = 0.0;  // best payoff under theta*
  double arm_payoff = 0.0;      // payoff of x_t under theta*
  double tilde_payoff = 0.0;    // payoff of x_t under theta_tilde
  double support_star = 0.0;    // J(theta*)
  double support_tilde = 0.0;   // J(theta_tilde)

  double inst_regret = 0.0;  // optimal_payoff - arm_payoff
  double rts = 0.0;          // optimal_payoff - tilde_payoff
  double rrls = 0.0;         // tilde_payoff - arm_payoff

  double hat_dist = 0.0;      // ||theta_hat - theta*||_{V_t}
  double hat_radius = 0.0;    // beta_t(delta') (divided by c_mu for GLM)
  double tilde_dist = 0.0;    // ||theta_tilde - theta_hat||_{V_t}
  double tilde_radius = 0.0;  // gamma_t(delta') (divided by c_mu for GLM)
  double eta_norm = 0.0;
  double eta_radius = 0.0;    // concentration radius at delta'

  double feat_norm = 0.0;  // ||x_t||_{V_t^{-1}}
  bool glm_fallback = false;

  double cum_regret = 0.0;
  double cum_rts = 0.0;
  double cum_rrls = 0.0;
  double det_lhs = 0.0;  // sum_{s<=t} ||x_s||^2_{V_s^{-1}}
  double det_mid = 0.0;  // 2 log(det V_{t+1} / det(lambda I))

  bool optimistic() const { return support_tilde >= support_star; }
  bool hat_event() const { return hat_dist <= hat_radius; }
  bool tilde_event() const { return tilde_dist <= tilde_radius; }
};

struct DetLemmaCheck {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
  bool ok = true;
  // Set when the inequality does not apply (arms outside the unit ball or
  // lambda < 1); ok is then true vacuously.
  bool skipped = false;
};

struct TrajectorySummary {
  std::int64_t steps = 0;
  double cum_regret = 0.0;
  double cum_rts = 0.0;
  double cum_rrls = 0.0;
  double optimism_frequency = 0.0;
  double conditional_optimism_frequency = 0.0;
  std::int64_t optimistic_steps = 0;
  std::int64_t conditional_hits = 0;
  std::int64_t hat_event_steps = 0;
  // Descriptive only: mean distance between consecutive optimistic steps (0
  // with fewer than two) and the longest run of non-optimistic steps.
  double mean_optimism_gap = 0.0;
  std::int64_t longest_non_optimistic_run = 0;
  std::int64_t hat_violations = 0;
  std::int64_t tilde_violations = 0;
  bool hat_violated = false;
  bool tilde_violated = false;
  DetLemmaCheck det;
  double max_det_slack = 0.0;  // max_t (det_lhs - det_mid); <= 0 expected
  std::int64_t glm_fallbacks = 0;
  int inverse_recomputes = 0;
  std::vector<std::string> warnings;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  int dim = 0;
  std::int64_t horizon = 0;
  double lambda = 1.0;
  ProblemKind problem = ProblemKind::kLinear;
  std::vector<StepRecord> steps;
  TrajectorySummary summary;
};

// One simulation lane: environment, policy, design state, ledger and the two
// generators (policy randomness and reward noise are separate streams so that
// different policies on the same seed see the same noise sequence).
class Episode {
 public:
  Episode(Environment env, PolicySpec policy, ConfidenceParams params,
          Rng policy_rng, Rng noise_rng);

  // Selects, observes, records and absorbs one step.
  const StepRecord& Step();

  const Environment& environment() const { return env_; }
  const DesignState& state() const { return state_; }
  const ConfidenceParams& params() const { return params_; }
  const std::vector<StepRecord>& ledger() const { return ledger_; }

  // Runs the remaining steps up to the horizon.
  void RunToHorizon();
  // Moves the ledger out together with its summary.
  TrajectoryRecord Finish(std::uint64_t seed);

 private:
  Selection Select(bool* fallback);

  Environment env_;
  PolicySpec policy_;
  ConfidenceParams params_;
  DesignState state_;
  std::optional<GlmHistory> glm_history_;
  Eigen::VectorXd glm_estimate_;
  Rng policy_rng_;
  Rng noise_rng_;
  std::vector<StepRecord> ledger_;
  std::int64_t glm_fallbacks_ = 0;
};

struct OptimismCount {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double frequency() const {
    return trials == 0 ? 0.0 : static_cast<double>(hits) / trials;
  }
};
// Fraction of steps with J(theta_tilde) >= J(theta*). With condition_on_hat,
// the fraction among steps where the RLS event holds of steps that are both
// optimistic and inside the TS ellipsoid. Throws on an empty ledger.
OptimismCount CountOptimism(const std::vector<StepRecord>& ledger,
                            bool condition_on_hat);
double OptimismFrequency(const std::vector<StepRecord>& ledger,
                         bool condition_on_hat);

// lhs = sum ||x_t||^2_{V_t^{-1}}, mid = 2 log(det V_{T+1}/det(lambda I)),
// rhs = 2 d log(1 + T/lambda); ok iff lhs <= mid + 1e-6 and mid <= rhs + 1e-6.
DetLemmaCheck CheckDetLemma(const std::vector<StepRecord>& ledger,
                            const DesignState& state);
inline constexpr double kDetLemmaTol = 1e-6;

TrajectorySummary Summarize(const std::vector<StepRecord>& ledger,
                            const DesignState& state, bool det_applicable);

struct EventRates {
  double hat_fail = 0.0;
  double tilde_fail = 0.0;
  double joint_fail = 0.0;  // any step outside either ellipsoid
  std::int64_t runs = 0;
};
// Fraction of trajectories with at least one violation of each event.
// Requires at least two records.
EventRates EventViolationRates(const std::vector<TrajectoryRecord>& records);

// Azuma-style monitor on the per-step weighted feature norms: for each run,
// the largest |sum_{s<=t} (feat_norm_s - mean over runs of feat_norm_s)| is
// compared with sqrt(8 T / lambda * log(4 / delta)). Non-fatal; reported only.
struct MartingaleMonitor {
  double bound = 0.0;
  double fraction_within = 1.0;
  std::vector<double> max_deviation;
};
MartingaleMonitor MonitorFeatureNorms(
    const std::vector<TrajectoryRecord>& records, double delta);

}  // namespace tslab

#endif  // TSLAB_SIMULATOR_H_
