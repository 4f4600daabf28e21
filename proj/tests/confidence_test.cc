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

#include "Eigen/Dense"
#include "gtest/gtest.h"
#include "test_util.h"
#include "tslab/errors.h"
#include "tslab/linalg.h"
#include "tslab/ts_distribution.h"

namespace tslab {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

ConfidenceParams Unit(std::int64_t horizon = 1) {
  return ConfidenceParams(1.0, 1.0, 1.0, 0.1, horizon);
}

TEST(ConfidenceParamsTest, DeltaPrime) {
  EXPECT_DOUBLE_EQ(ConfidenceParams(1, 1, 1, 0.1, 50).delta_prime(), 0.1 / 200);
  EXPECT_THROW(ConfidenceParams(-1, 1, 1, 0.1, 1), InvalidArgument);
  EXPECT_THROW(ConfidenceParams(1, 0, 1, 0.1, 1), InvalidArgument);
  EXPECT_THROW(ConfidenceParams(1, 1, 0, 0.1, 1), InvalidArgument);
  EXPECT_THROW(ConfidenceParams(1, 1, 1, 1.0, 1), InvalidArgument);
  EXPECT_THROW(ConfidenceParams(1, 1, 1, 0.1, 0), InvalidArgument);
}

TEST(BetaTest, Examples) {
  EXPECT_NEAR(BetaT(Unit(), 2, 1, 0.1), std::sqrt(2 * std::log(20.0)) + 1,
              1e-14);
  EXPECT_NEAR(BetaT(Unit(), 2, 1, 0.1), 3.4477468306808166, 1e-12);
  const ConfidenceParams noiseless(0.0, 0.7, 4.0, 0.1, 10);
  EXPECT_DOUBLE_EQ(BetaT(noiseless, 3, 1000, 0.1), 2.0 * 0.7);
  EXPECT_NEAR(BetaT(Unit(), 5, 0, 0.01), std::sqrt(2 * std::log(100.0)) + 1,
              1e-14);
  EXPECT_THROW(BetaT(Unit(), 2, 1, 1.0), InvalidArgument);
  EXPECT_THROW(BetaT(Unit(), 2, -1, 0.1), InvalidArgument);
}

TEST(BetaTest, LargeTimeDoesNotOverflow) {
  const double b = BetaT(Unit(), 200, 1'000'000'000, 1e-12);
  EXPECT_TRUE(std::isfinite(b));
}

TEST(BetaTest, Monotone) {
  double prev = 0.0;
  for (std::int64_t t = 0; t < 5000; t += 37) {
    const double b = BetaT(Unit(), 3, t, 0.1);
    EXPECT_GE(b, prev);
    prev = b;
  }
  prev = 0.0;
  for (double delta : {0.5, 0.1, 0.01, 1e-4, 1e-8}) {
    const double b = BetaT(Unit(), 3, 10, delta);
    EXPECT_GE(b, prev);
    prev = b;
  }
}

TEST(GammaTest, Example) {
  const auto g = TSDistribution::GaussianStd(2);
  const ConfidenceParams p = Unit(1);
  ASSERT_DOUBLE_EQ(p.delta_prime(), 0.025);
  const double gamma = GammaT(p, g, 1, p.delta_prime());
  EXPECT_NEAR(BetaT(p, 2, 1, 0.025), 3.9604143746015965, 1e-12);
  EXPECT_NEAR(g.ConcentrationRadius(0.025), 4.505629285786315, 1e-12);
  EXPECT_NEAR(gamma, 17.844158990054048, 1e-11);
}

TEST(GammaTest, FactorizesAndIsMonotone) {
  const ConfidenceParams p(0.5, 2.0, 1.5, 0.05, 300);
  const auto b = TSDistribution::UniformBallSqrtD(4);
  const double ratio = b.ConcentrationRadius(0.01);
  double prev = 0.0;
  for (std::int64_t t : {0, 1, 10, 100, 1000}) {
    const double gamma = GammaT(p, b, t, 0.01);
    EXPECT_EQ(gamma, BetaT(p, 4, t, p.delta_prime()) * ratio);
    EXPECT_GE(gamma, prev);
    prev = gamma;
  }
  EXPECT_LT(GammaT(p, b, 5, 0.1), GammaT(p, b, 5, 0.001));
}

TEST(RlsEstimateTest, Examples) {
  DesignState s(2, 1.0);
  EXPECT_EQ(RlsEstimate(s), VectorXd::Zero(2));
  s.Absorb(Eigen::Vector2d(1, 0), 2.0);
  EXPECT_LE((RlsEstimate(s) - Eigen::Vector2d(1, 0)).norm(), 1e-15);
}

TEST(RlsEstimateTest, NoiselessShrinkage) {
  Rng rng = MakeRng({41});
  const VectorXd theta = Eigen::Vector3d(0.5, -0.3, 0.2);
  DesignState s(3, 1.0);
  for (int i = 0; i < 500; ++i) {
    const VectorXd x = testing::UnitVector(3, rng);
    s.Absorb(x, x.dot(theta));
  }
  const double err = (RlsEstimate(s) - theta).norm();
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<MatrixXd>(s.V()).eigenvalues().minCoeff();
  EXPECT_LE(err, theta.norm() * s.lambda() / min_eig + 1e-12);
  EXPECT_LE(err, 0.05);
}

TEST(RlsEstimateTest, IncrementalMatchesBatch) {
  Rng rng = MakeRng({42});
  DesignState s(4, 2.0);
  MatrixXd v = 2.0 * MatrixXd::Identity(4, 4);
  VectorXd b = VectorXd::Zero(4);
  for (int i = 0; i < 300; ++i) {
    const VectorXd x = testing::InBall(4, rng);
    const double r = Uniform01(rng);
    s.Absorb(x, r);
    v += x * x.transpose();
    b += r * x;
  }
  EXPECT_LE((RlsEstimate(s) - v.ldlt().solve(b)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(InEllipsoidTest, Examples) {
  DesignState id(2, 1.0);
  const VectorXd c = Eigen::Vector2d(0.3, 0.1);
  EXPECT_TRUE(InEllipsoid(id, c, c, 0.0));
  EXPECT_TRUE(InEllipsoid(id, VectorXd::Zero(2), Eigen::Vector2d(3, 4), 5.0));
  EXPECT_FALSE(InEllipsoid(id, VectorXd::Zero(2), Eigen::Vector2d(3, 4), 4.999));
  DesignState s(2, 1.0);
  s.Absorb(Eigen::Vector2d(1, 0), 0.0);
  s.Absorb(Eigen::Vector2d(1, 0), 0.0);
  s.Absorb(Eigen::Vector2d(1, 0), 0.0);
  ASSERT_EQ(s.V()(0, 0), 4.0);
  EXPECT_TRUE(InEllipsoid(s, VectorXd::Zero(2), Eigen::Vector2d(1, 0), 2.0));
  EXPECT_FALSE(InEllipsoid(s, VectorXd::Zero(2), Eigen::Vector2d(1, 0), 1.999));
}

}  // namespace
}  // namespace tslab
