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
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "tslab/confidence.h"
#include "tslab/errors.h"

namespace tslab {
namespace {

using Eigen::Vector2d;
using Eigen::VectorXd;

std::vector<VectorXd> RandomArms(int n, int d, Rng& rng) {
  std::vector<VectorXd> arms;
  for (int i = 0; i < n; ++i) arms.push_back(testing::UnitVector(d, rng));
  return arms;
}

DesignState Trained(int d, int n, Rng& rng, double lambda = 1.0) {
  DesignState s(d, lambda);
  for (int i = 0; i < n; ++i) {
    const VectorXd x = testing::InBall(d, rng);
    s.Absorb(x, x[0] + 0.1 * (Uniform01(rng) - 0.5));
  }
  return s;
}

const ConfidenceParams kParams(1.0, 1.0, 1.0, 0.1, 100);

TEST(TsSelectTest, ZeroPerturbationIsGreedy) {
  Rng rng = MakeRng({61});
  const DesignState s = Trained(3, 40, rng);
  const ArmSet set = ArmSet::Finite(RandomArms(25, 3, rng));
  const Selection ts = TsSelect(
      s, kParams, TSDistribution::Fixed(VectorXd::Zero(3)), set, rng);
  const Selection greedy = GreedySelect(s, set);
  EXPECT_EQ(ts.theta_tilde, RlsEstimate(s));
  EXPECT_EQ(ts.arm_index, greedy.arm_index);
  EXPECT_EQ(ts.arm, greedy.arm);
}

TEST(TsSelectTest, EmptyHistoryClosedForm) {
  const DesignState s(2, 1.0);
  const VectorXd eta = Vector2d(0.3, -1.2);
  Rng rng = MakeRng({62});
  const Selection sel =
      TsSelect(s, kParams, TSDistribution::Fixed(eta), ArmSet::UnitBall(2), rng);
  const double beta0 = 1.0 + std::sqrt(2 * std::log(1 / kParams.delta_prime()));
  EXPECT_NEAR(BetaT(kParams, 2, 0, kParams.delta_prime()), beta0, 1e-14);
  EXPECT_LE((sel.theta_tilde - beta0 * eta).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(sel.eta, eta);
}

TEST(TsSelectTest, Deterministic) {
  Rng data = MakeRng({63});
  const DesignState s = Trained(4, 30, data);
  const ArmSet set = ArmSet::ScaledHypercube(4);
  const auto dist = TSDistribution::GaussianStd(4);
  Rng a = MakeRng({64}), b = MakeRng({64});
  const Selection sa = TsSelect(s, kParams, dist, set, a);
  const Selection sb = TsSelect(s, kParams, dist, set, b);
  EXPECT_EQ(sa.theta_tilde, sb.theta_tilde);
  EXPECT_EQ(sa.arm, sb.arm);
}

TEST(TsSelectTest, AffineSamplingIdentity) {
  Rng rng = MakeRng({65});
  const DesignState s = Trained(5, 80, rng);
  const ArmSet set = ArmSet::UnitBall(5);
  const double beta = BetaT(kParams, 5, s.t(), kParams.delta_prime());
  for (const char* name : {"gaussian", "uniform_ball", "uniform_sphere"}) {
    const auto dist = TSDistribution::FromName(name, 5);
    for (int i = 0; i < 100; ++i) {
      const Selection sel = TsSelect(s, kParams, dist, set, rng);
      const double lhs = WeightedNorm(s.V(), sel.theta_tilde - RlsEstimate(s));
      EXPECT_NEAR(lhs, beta * sel.eta.norm(), 1e-9 * (1 + lhs));
    }
  }
}

TEST(SelectionTest, ScaleInvariantArgmax) {
  Rng rng = MakeRng({66});
  for (const ArmSet& set :
       {ArmSet::Finite(RandomArms(30, 3, rng)), ArmSet::UnitBall(3),
        ArmSet::ScaledHypercube(3)}) {
    for (int i = 0; i < 100; ++i) {
      const VectorXd theta = testing::Gaussian(3, rng);
      const double c = 0.01 + 100 * Uniform01(rng);
      const BestArm a = set.Best(theta);
      const BestArm b = set.Best(c * theta);
      EXPECT_EQ(a.index, b.index);
      EXPECT_LE((a.arm - b.arm).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(GlmTsSelectTest, IdentityLinkMatchesLinearTs) {
  Rng rng = MakeRng({67});
  const double lambda = 1e-6;
  const ConfidenceParams params(1.0, 1.0, lambda, 0.1, 100);
  const ArmSet set = ArmSet::Finite(RandomArms(30, 3, rng));
  DesignState s(3, lambda);
  GlmHistory h(3);
  for (int i = 0; i < 50; ++i) {
    const VectorXd x = testing::InBall(3, rng);
    const double r = 0.5 * x[1] + 0.2 * (Uniform01(rng) - 0.5);
    s.Absorb(x, r);
    h.Add(x, r);
  }
  const auto dist = TSDistribution::GaussianStd(3);
  const LinkFunction id = LinkFunction::Identity();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a = MakeRng({68, seed}), b = MakeRng({68, seed});
    const Selection lin = TsSelect(s, params, dist, set, a);
    const GlmSelection glm =
        GlmTsSelect(h, s, params, dist, id, set, VectorXd::Zero(3), b);
    EXPECT_FALSE(glm.fallback);
    EXPECT_LE((lin.theta_tilde - glm.selection.theta_tilde).norm(), 1e-4);
    EXPECT_EQ(lin.arm_index, glm.selection.arm_index);
  }
}

TEST(GlmTsSelectTest, LogisticArgmaxIsLinearArgmax) {
  Rng rng = MakeRng({69});
  const LinkFunction link = LinkFunction::Logistic(1.0);
  const ArmSet set = ArmSet::Finite(RandomArms(50, 4, rng));
  for (int i = 0; i < 200; ++i) {
    const VectorXd theta = 2.0 * testing::Gaussian(4, rng);
    std::int64_t best = 0;
    for (std::int64_t k = 1; k < set.size(); ++k) {
      if (link.mu(set.ArmAt(k).dot(theta)) > link.mu(set.ArmAt(best).dot(theta))) {
        best = k;
      }
    }
    EXPECT_EQ(set.Best(theta).index, best);
  }
}

TEST(GlmTsSelectTest, ZeroPerturbationIsGreedyGlm) {
  Rng rng = MakeRng({70});
  const LinkFunction link = LinkFunction::Logistic(1.0);
  const ArmSet set = ArmSet::Finite(RandomArms(10, 2, rng));
  DesignState s(2, 1.0);
  GlmHistory h(2);
  for (int i = 0; i < 100; ++i) {
    const VectorXd& x = set.ArmAt(i % set.size());
    const double r = Uniform01(rng) < link.mu(x.dot(Vector2d(0.5, -0.5)));
    s.Absorb(x, r);
    h.Add(x, r);
  }
  const GlmSelection sel =
      GlmTsSelect(h, s, kParams, TSDistribution::Fixed(VectorXd::Zero(2)), link,
                  set, VectorXd::Zero(2), rng);
  EXPECT_EQ(sel.selection.theta_tilde, sel.estimate);
  EXPECT_EQ(sel.selection.arm_index, set.Best(sel.estimate).index);
}

TEST(GlmTsSelectTest, FallbackOnEstimatorFailure) {
  const LinkFunction link = LinkFunction::Logistic(0.5);
  DesignState s(1, 1.0);
  GlmHistory h(1);
  for (int i = 0; i < 5; ++i) {
    s.Absorb(VectorXd::Ones(1), 1.0);
    h.Add(VectorXd::Ones(1), 1.0);
  }
  Rng rng = MakeRng({71});
  const VectorXd fallback = VectorXd::Constant(1, 0.25);
  const GlmSelection sel = GlmTsSelect(
      h, s, ConfidenceParams(0.5, 0.5, 1.0, 0.1, 10),
      TSDistribution::Fixed(VectorXd::Zero(1)), link,
      ArmSet::Finite({VectorXd::Ones(1), -VectorXd::Ones(1)}), fallback, rng);
  EXPECT_TRUE(sel.fallback);
  EXPECT_EQ(sel.estimate, fallback);
}

TEST(RloBestTest, Examples) {
  const BestArm q = RloBest(RloPenalty::QuadraticNorm(0.5), Vector2d(2, 0));
  EXPECT_EQ(q.arm, VectorXd(Vector2d(2, 0)));
  EXPECT_DOUBLE_EQ(q.value, 2.0);
  const BestArm l = RloBest(RloPenalty::L1Box(1.0), Eigen::Vector4d(3, 0.5, -2, 1));
  EXPECT_LE((l.arm - Eigen::Vector4d(0.5, 0, -0.5, 0)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_NEAR(l.value, 1.5, 1e-15);
  for (const RloPenalty& p : {RloPenalty::QuadraticNorm(0.7), RloPenalty::L1Box(0.7)}) {
    const BestArm z = RloBest(p, VectorXd::Zero(3));
    EXPECT_EQ(z.arm, VectorXd::Zero(3));
    EXPECT_EQ(z.value, 0.0);
  }
  EXPECT_THROW(RloPenalty::QuadraticNorm(0.0), InvalidArgument);
  EXPECT_THROW(RloPenalty::L1Box(-1.0), InvalidArgument);
}

// Enumerates {-1/sqrt d, 0, 1/sqrt d}^d.
TEST(RloBestTest, L1BoxMatchesEnumeration) {
  Rng rng = MakeRng({72});
  const int d = 4;
  const RloPenalty pen = RloPenalty::L1Box(0.6);
  const double s = 1 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < 200; ++i) {
    const VectorXd theta = testing::Gaussian(d, rng);
    double best = -INFINITY;
    for (int code = 0; code < 81; ++code) {
      VectorXd x(d);
      for (int j = 0, c = code; j < d; ++j, c /= 3) x[j] = (c % 3 - 1) * s;
      best = std::max(best, pen.Objective(x, theta));
    }
    const BestArm b = RloBest(pen, theta);
    EXPECT_NEAR(b.value, best, 1e-12);
    EXPECT_NEAR(pen.Objective(b.arm, theta), b.value, 1e-12);
  }
}

TEST(RloBestTest, QuadraticFirstOrderOptimality) {
  Rng rng = MakeRng({73});
  const RloPenalty pen = RloPenalty::QuadraticNorm(0.5);
  for (int i = 0; i < 1000; ++i) {
    const VectorXd theta = testing::Gaussian(3, rng);
    const BestArm b = RloBest(pen, theta);
    EXPECT_LE((theta - 2 * pen.pen_weight * b.arm).norm(), 1e-12);
    EXPECT_NEAR(pen.Objective(b.arm, theta), b.value, 1e-12);
    const VectorXd nearby = b.arm + 1e-3 * testing::Gaussian(3, rng);
    EXPECT_LE(pen.Objective(nearby, theta), b.value);
  }
}

TEST(RloTsSelectTest, HooksMirrorLinearTs) {
  Rng rng = MakeRng({74});
  const RloPenalty pen = RloPenalty::QuadraticNorm(0.5);
  const DesignState s = Trained(3, 20, rng);
  const Selection zero = RloTsSelect(
      s, kParams, TSDistribution::Fixed(VectorXd::Zero(3)), pen, rng);
  EXPECT_LE((zero.arm - RloBest(pen, RlsEstimate(s)).arm).norm(), 1e-15);

  const auto dist = TSDistribution::GaussianStd(3);
  Rng a = MakeRng({75}), b = MakeRng({75});
  EXPECT_EQ(RloTsSelect(s, kParams, dist, pen, a).arm,
            RloTsSelect(s, kParams, dist, pen, b).arm);

  const VectorXd eta = Eigen::Vector3d(1, 0, -1);
  const Selection empty = RloTsSelect(DesignState(3, 1.0), kParams,
                                      TSDistribution::Fixed(eta), pen, rng);
  const double beta0 = BetaT(kParams, 3, 0, kParams.delta_prime());
  EXPECT_LE((empty.theta_tilde - beta0 * eta).norm(), 1e-14);
  EXPECT_LE((empty.arm - beta0 * eta).norm(), 1e-14);
}

TEST(GreedySelectTest, Examples) {
  const ArmSet set = ArmSet::Finite({Vector2d(1, 0), Vector2d(0, 1)});
  EXPECT_EQ(GreedySelect(DesignState(2, 1.0), set).arm_index, 0);
  DesignState s(2, 1.0);
  s.Absorb(Vector2d(1, 0), 2.0);
  EXPECT_EQ(GreedySelect(s, set).arm_index, 0);
  EXPECT_EQ(GreedySelect(s, set).eta, VectorXd::Zero(2));
}

// Pearson chi-square against uniform over 10 arms, 10^4 draws. The 99.9%
// quantile of chi-square with 9 degrees of freedom is 27.877.
TEST(GreedySelectTest, FullExplorationIsUniform) {
  Rng rng = MakeRng({76});
  const int n_arms = 10, draws = 10000;
  const ArmSet set = ArmSet::Finite(RandomArms(n_arms, 3, rng));
  const DesignState s(3, 1.0);
  std::vector<int> counts(n_arms, 0);
  for (int i = 0; i < draws; ++i) ++counts[EpsGreedySelect(s, set, 1.0, rng).arm_index];
  const double expected = static_cast<double>(draws) / n_arms;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 27.877);
}

TEST(GreedySelectTest, NoExplorationIsGreedy) {
  Rng rng = MakeRng({77});
  const ArmSet set = ArmSet::Finite(RandomArms(10, 3, rng));
  const DesignState s = Trained(3, 10, rng);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(EpsGreedySelect(s, set, 0.0, rng).arm_index,
              GreedySelect(s, set).arm_index);
  }
  EXPECT_THROW(EpsGreedySelect(s, set, 1.5, rng), InvalidArgument);
}

}  // namespace
}  // namespace tslab
