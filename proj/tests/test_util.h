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

#ifndef TSLAB_TESTS_TEST_UTIL_H_
#define TSLAB_TESTS_TEST_UTIL_H_

#include <random>

#include "Eigen/Core"
#include "tslab/rng.h"

namespace tslab::testing {

inline Eigen::VectorXd Gaussian(int d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = n(rng);
  return v;
}

inline Eigen::VectorXd UnitVector(int d, Rng& rng) {
  Eigen::VectorXd v = Gaussian(d, rng);
  return v / v.norm();
}

// Uniform point in the unit ball.
inline Eigen::VectorXd InBall(int d, Rng& rng) {
  return UnitVector(d, rng) * std::pow(Uniform01(rng), 1.0 / d);
}

inline double MaxAbs(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace tslab::testing

#endif  // TSLAB_TESTS_TEST_UTIL_H_
