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

#include "tslab/simulator.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tslab/errors.h"

namespace tslab {
namespace {

void CheckTheta(const Eigen::VectorXd& theta_star, int dim) {
  if (theta_star.size() != dim) {
    throw InvalidArgument("Environment: theta* dimension mismatch");
  }
  if (!theta_star.allFinite()) {
    throw InvalidArgument("Environment: theta* is not finite");
  }
}

void CheckNoise(const NoiseSpec& noise) {
  if (!(noise.scale >= 0.0) || !std::isfinite(noise.scale)) {
    throw InvalidArgument("Environment: noise scale must be >= 0");
  }
}

}  // namespace

Environment Environment::Linear(Eigen::VectorXd theta_star, ArmSet set,
                                NoiseSpec noise) {
  CheckTheta(theta_star, set.dim());
  CheckNoise(noise);
  if (noise.kind == NoiseSpec::Kind::kBernoulli) {
    throw InvalidArgument("Environment: Bernoulli rewards need a GLM link");
  }
  Environment env(ProblemKind::kLinear, std::move(theta_star), noise);
  env.set_ = std::move(set);
  return env;
}

Environment Environment::Glm(Eigen::VectorXd theta_star, ArmSet set,
                             LinkFunction link, NoiseSpec noise) {
  CheckTheta(theta_star, set.dim());
  CheckNoise(noise);
  link.Validate();
  if (noise.kind == NoiseSpec::Kind::kBernoulli && link.name != "logistic") {
    throw InvalidArgument("Environment: Bernoulli rewards need a link in (0,1)");
  }
  Environment env(ProblemKind::kGlm, std::move(theta_star), noise);
  env.set_ = std::move(set);
  env.link_ = std::move(link);
  return env;
}

Environment Environment::Rlo(Eigen::VectorXd theta_star, RloPenalty penalty,
                             NoiseSpec noise) {
  if (theta_star.size() < 1) throw InvalidArgument("Environment: empty theta*");
  CheckTheta(theta_star, static_cast<int>(theta_star.size()));
  CheckNoise(noise);
  if (noise.kind == NoiseSpec::Kind::kBernoulli) {
    throw InvalidArgument("Environment: Bernoulli rewards need a GLM link");
  }
  Environment env(ProblemKind::kRlo, std::move(theta_star), noise);
  env.penalty_ = penalty;
  return env;
}

double Environment::MeanReward(const Eigen::VectorXd& x) const {
  const double z = x.dot(theta_star_);
  return problem_ == ProblemKind::kGlm ? link_->mu(z) : z;
}

double Environment::DrawReward(const Eigen::VectorXd& x, Rng& rng) const {
  const double mean = MeanReward(x);
  switch (noise_.kind) {
    case NoiseSpec::Kind::kGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      return mean + noise_.scale * normal(rng);
    }
    case NoiseSpec::Kind::kUniform: {
      const double half_width = std::sqrt(3.0) * noise_.scale;
      return mean + half_width * (2.0 * Uniform01(rng) - 1.0);
    }
    case NoiseSpec::Kind::kBernoulli:
      return Uniform01(rng) < mean ? 1.0 : 0.0;
  }
  return mean;
}

double Environment::Payoff(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& theta) const {
  switch (problem_) {
    case ProblemKind::kLinear:
      return x.dot(theta);
    case ProblemKind::kGlm:
      return link_->mu(x.dot(theta));
    case ProblemKind::kRlo:
      return penalty_->Objective(x, theta);
  }
  return 0.0;
}

double Environment::OptimalPayoff(const Eigen::VectorXd& theta) const {
  switch (problem_) {
    case ProblemKind::kLinear:
      return set_->SupportValue(theta);
    case ProblemKind::kGlm:
      return link_->mu(set_->SupportValue(theta));
    case ProblemKind::kRlo: {
      // Evaluate f at the closed-form maximizer so that regret uses the same
      // arithmetic as Payoff.
      return penalty_->Objective(RloBest(*penalty_, theta).arm, theta);
    }
  }
  return 0.0;
}

double Environment::Support(const Eigen::VectorXd& theta) const {
  if (problem_ == ProblemKind::kRlo) return OptimalPayoff(theta);
  return set_->SupportValue(theta);
}

Episode::Episode(Environment env, PolicySpec policy, ConfidenceParams params,
                 Rng policy_rng, Rng noise_rng)
    : env_(std::move(env)),
      policy_(std::move(policy)),
      params_(params),
      state_(env_.dim(), params.lambda()),
      policy_rng_(std::move(policy_rng)),
      noise_rng_(std::move(noise_rng)) {
  const bool rlo_policy = std::holds_alternative<RloTsSpec>(policy_);
  if (rlo_policy != (env_.problem() == ProblemKind::kRlo)) {
    throw InvalidArgument("Episode: RLO policies require an RLO environment");
  }
  const bool glm_policy = std::holds_alternative<GlmTsSpec>(policy_);
  if (glm_policy && env_.problem() != ProblemKind::kGlm) {
    throw InvalidArgument("Episode: GLM-TS requires a GLM environment");
  }
  if (const TSDistribution* dist = PolicyDistribution(policy_)) {
    if (dist->dim() != env_.dim()) {
      throw InvalidArgument("Episode: distribution dimension mismatch");
    }
  }
  if (glm_policy) {
    glm_history_.emplace(env_.dim());
    glm_estimate_ = Eigen::VectorXd::Zero(env_.dim());
  }
  ledger_.reserve(static_cast<std::size_t>(params_.horizon()));
}

Selection Episode::Select(bool* fallback) {
  *fallback = false;
  if (const auto* p = std::get_if<LinTsSpec>(&policy_)) {
    return TsSelect(state_, params_, p->dist, *env_.arm_set(), policy_rng_);
  }
  if (const auto* p = std::get_if<GlmTsSpec>(&policy_)) {
    GlmSelection g =
        GlmTsSelect(*glm_history_, state_, params_, p->dist, p->link,
                    *env_.arm_set(), glm_estimate_, policy_rng_);
    *fallback = g.fallback;
    glm_estimate_ = g.estimate;
    return std::move(g.selection);
  }
  if (const auto* p = std::get_if<RloTsSpec>(&policy_)) {
    return RloTsSelect(state_, params_, p->dist, p->penalty, policy_rng_);
  }
  if (std::holds_alternative<GreedySpec>(policy_)) {
    return GreedySelect(state_, *env_.arm_set());
  }
  const auto& eps = std::get<EpsGreedySpec>(policy_);
  return EpsGreedySelect(state_, *env_.arm_set(), eps.eps, policy_rng_);
}

const StepRecord& Episode::Step() {
  if (static_cast<std::int64_t>(ledger_.size()) >= params_.horizon()) {
    throw InvalidArgument("Episode::Step: horizon reached");
  }
  const std::int64_t t = state_.t();
  try {
    StepRecord rec;
    rec.t = t + 1;

    const double delta_prime = params_.delta_prime();
    const double slope_scale =
        env_.problem() == ProblemKind::kGlm ? env_.link()->c_mu : 1.0;
    const TSDistribution* dist = PolicyDistribution(policy_);

    bool fallback = false;
    Selection sel = Select(&fallback);
    rec.glm_fallback = fallback;
    if (fallback) ++glm_fallbacks_;
    rec.theta_hat = glm_history_ ? glm_estimate_ : RlsEstimate(state_);
    rec.arm = std::move(sel.arm);
    rec.arm_index = sel.arm_index;
    rec.theta_tilde = std::move(sel.theta_tilde);
    rec.eta = std::move(sel.eta);

    const Eigen::VectorXd& theta_star = env_.theta_star();
    const double beta = BetaT(params_, state_.dim(), t, delta_prime);
    rec.hat_radius = beta / slope_scale;
    rec.hat_dist = WeightedNorm(state_.V(), rec.theta_hat - theta_star);
    rec.tilde_dist = WeightedNorm(state_.V(), rec.theta_tilde - rec.theta_hat);
    rec.eta_norm = rec.eta.norm();
    if (dist != nullptr) {
      rec.eta_radius = dist->ConcentrationRadius(delta_prime);
      rec.tilde_radius = rec.hat_radius * rec.eta_radius;
    }
    rec.feat_norm = WeightedNorm(state_.V_inv(), rec.arm);

    rec.optimal_payoff = env_.OptimalPayoff(theta_star);
    rec.arm_payoff = env_.Payoff(rec.arm, theta_star);
    rec.tilde_payoff = env_.Payoff(rec.arm, rec.theta_tilde);
    rec.support_star = env_.Support(theta_star);
    rec.support_tilde = env_.Support(rec.theta_tilde);
    rec.inst_regret = rec.optimal_payoff - rec.arm_payoff;
    rec.rts = rec.optimal_payoff - rec.tilde_payoff;
    rec.rrls = rec.tilde_payoff - rec.arm_payoff;

    rec.reward = env_.DrawReward(rec.arm, noise_rng_);
    state_.Absorb(rec.arm, rec.reward);
    if (glm_history_) glm_history_->Add(rec.arm, rec.reward);

    const StepRecord* prev = ledger_.empty() ? nullptr : &ledger_.back();
    rec.cum_regret = (prev ? prev->cum_regret : 0.0) + rec.inst_regret;
    rec.cum_rts = (prev ? prev->cum_rts : 0.0) + rec.rts;
    rec.cum_rrls = (prev ? prev->cum_rrls : 0.0) + rec.rrls;
    rec.det_lhs = (prev ? prev->det_lhs : 0.0) + rec.feat_norm * rec.feat_norm;
    rec.det_mid = 2.0 * (state_.log_det_V() -
                         state_.dim() * std::log(state_.lambda()));
    ledger_.push_back(std::move(rec));
    return ledger_.back();
  } catch (const EpisodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw EpisodeError(t + 1, e.what());
  }
}

void Episode::RunToHorizon() {
  while (static_cast<std::int64_t>(ledger_.size()) < params_.horizon()) Step();
}

TrajectoryRecord Episode::Finish(std::uint64_t seed) {
  TrajectoryRecord rec;
  rec.seed = seed;
  rec.dim = env_.dim();
  rec.horizon = params_.horizon();
  rec.lambda = params_.lambda();
  rec.problem = env_.problem();
  const bool arms_in_ball =
      env_.problem() != ProblemKind::kRlo ||
      env_.penalty()->kind == RloPenalty::Kind::kL1Box;
  rec.summary = Summarize(ledger_, state_, arms_in_ball);
  rec.summary.glm_fallbacks = glm_fallbacks_;
  if (const TSDistribution* dist = PolicyDistribution(policy_)) {
    if (dist->HasAnticoncentrationBound()) {
      const double p = dist->AnticoncentrationBound();
      if (static_cast<double>(params_.horizon()) < 1.0 / (2.0 * p)) {
        rec.summary.warnings.push_back(
            "horizon below 1/(2p); delta' may exceed p/2");
      }
    }
  }
  rec.steps = std::move(ledger_);
  ledger_.clear();
  return rec;
}

OptimismCount CountOptimism(const std::vector<StepRecord>& ledger,
                            bool condition_on_hat) {
  if (ledger.empty()) throw InvalidArgument("optimism frequency: empty ledger");
  OptimismCount count;
  for (const auto& s : ledger) {
    if (!condition_on_hat) {
      ++count.trials;
      if (s.optimistic()) ++count.hits;
    } else if (s.hat_event()) {
      ++count.trials;
      if (s.optimistic() && s.tilde_event()) ++count.hits;
    }
  }
  return count;
}

double OptimismFrequency(const std::vector<StepRecord>& ledger,
                         bool condition_on_hat) {
  return CountOptimism(ledger, condition_on_hat).frequency();
}

DetLemmaCheck CheckDetLemma(const std::vector<StepRecord>& ledger,
                            const DesignState& state) {
  DetLemmaCheck check;
  for (const auto& s : ledger) check.lhs += s.feat_norm * s.feat_norm;
  const double d = state.dim();
  const double lambda = state.lambda();
  check.mid = 2.0 * (state.log_det_V() - d * std::log(lambda));
  check.rhs = 2.0 * d *
              std::log1p(static_cast<double>(ledger.size()) / lambda);
  check.ok = check.lhs <= check.mid + kDetLemmaTol &&
             check.mid <= check.rhs + kDetLemmaTol;
  return check;
}

TrajectorySummary Summarize(const std::vector<StepRecord>& ledger,
                            const DesignState& state, bool det_applicable) {
  TrajectorySummary sum;
  sum.steps = static_cast<std::int64_t>(ledger.size());
  sum.inverse_recomputes = state.recompute_count();
  sum.max_det_slack = ledger.empty() ? 0.0 : -HUGE_VAL;
  std::int64_t first_opt = 0;
  std::int64_t last_opt = 0;
  for (const auto& s : ledger) {
    if (s.optimistic()) {
      if (sum.optimistic_steps == 0) first_opt = s.t;
      sum.longest_non_optimistic_run =
          std::max(sum.longest_non_optimistic_run, s.t - last_opt - 1);
      last_opt = s.t;
      ++sum.optimistic_steps;
    }
    if (s.hat_event()) {
      ++sum.hat_event_steps;
      if (s.optimistic() && s.tilde_event()) ++sum.conditional_hits;
    } else {
      ++sum.hat_violations;
    }
    if (!s.tilde_event()) ++sum.tilde_violations;
    sum.max_det_slack = std::max(sum.max_det_slack, s.det_lhs - s.det_mid);
  }
  sum.longest_non_optimistic_run =
      std::max(sum.longest_non_optimistic_run, sum.steps - last_opt);
  if (sum.optimistic_steps >= 2) {
    sum.mean_optimism_gap = static_cast<double>(last_opt - first_opt) /
                            (sum.optimistic_steps - 1);
  }
  if (!ledger.empty()) {
    const auto& last = ledger.back();
    sum.cum_regret = last.cum_regret;
    sum.cum_rts = last.cum_rts;
    sum.cum_rrls = last.cum_rrls;
    sum.optimism_frequency =
        static_cast<double>(sum.optimistic_steps) / sum.steps;
    sum.conditional_optimism_frequency =
        sum.hat_event_steps == 0
            ? 0.0
            : static_cast<double>(sum.conditional_hits) / sum.hat_event_steps;
  }
  sum.hat_violated = sum.hat_violations > 0;
  sum.tilde_violated = sum.tilde_violations > 0;
  sum.det = CheckDetLemma(ledger, state);
  if (!det_applicable || state.lambda() < 1.0) {
    sum.det.skipped = true;
    sum.det.ok = true;
    sum.warnings.push_back(
        "determinant lemma skipped: needs lambda >= 1 and arms in the unit "
        "ball");
  }
  return sum;
}

EventRates EventViolationRates(const std::vector<TrajectoryRecord>& records) {
  if (records.size() < 2) {
    throw InvalidArgument("EventViolationRates: need at least two records");
  }
  EventRates rates;
  rates.runs = static_cast<std::int64_t>(records.size());
  std::int64_t hat = 0;
  std::int64_t tilde = 0;
  std::int64_t joint = 0;
  for (const auto& r : records) {
    bool any_hat = false;
    bool any_tilde = false;
    for (const auto& s : r.steps) {
      any_hat = any_hat || !s.hat_event();
      any_tilde = any_tilde || !s.tilde_event();
    }
    hat += any_hat;
    tilde += any_tilde;
    joint += any_hat || any_tilde;
  }
  const double n = static_cast<double>(records.size());
  rates.hat_fail = hat / n;
  rates.tilde_fail = tilde / n;
  rates.joint_fail = joint / n;
  return rates;
}

MartingaleMonitor MonitorFeatureNorms(
    const std::vector<TrajectoryRecord>& records, double delta) {
  MartingaleMonitor monitor;
  if (records.empty()) return monitor;
  std::size_t horizon = records.front().steps.size();
  for (const auto& r : records) horizon = std::min(horizon, r.steps.size());
  const double lambda = records.front().lambda;
  monitor.bound = std::sqrt(8.0 * static_cast<double>(horizon) / lambda *
                            std::log(4.0 / delta));
  std::vector<double> lane_mean(horizon, 0.0);
  for (const auto& r : records) {
    for (std::size_t t = 0; t < horizon; ++t) {
      lane_mean[t] += r.steps[t].feat_norm;
    }
  }
  for (double& m : lane_mean) m /= static_cast<double>(records.size());
  std::size_t within = 0;
  for (const auto& r : records) {
    double running = 0.0;
    double worst = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      running += r.steps[t].feat_norm - lane_mean[t];
      worst = std::max(worst, std::fabs(running));
    }
    monitor.max_deviation.push_back(worst);
    if (worst <= monitor.bound) ++within;
  }
  monitor.fraction_within =
      static_cast<double>(within) / static_cast<double>(records.size());
  return monitor;
}

}  // namespace tslab
