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

#ifndef TSLAB_ARM_SET_H_
#define TSLAB_ARM_SET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "tslab/rng.h"

namespace tslab {

// Result of maximizing x^T theta over a decision set.
struct BestArm {
  Eigen::VectorXd arm;
  double value = 0.0;
  // Position in the enumerated set; -1 for the unit ball.
  std::int64_t index = -1;
};

struct FdGradient {
  Eigen::VectorXd grad;
  // True when theta sits within the finite-difference stencil of a point
  // where the maximizer is not unique; the gradient is then meaningless.
  bool near_tie = false;
};

// Compact decision set X with ||x|| <= 1 for every arm.
//
// Finite: explicit list, ties broken by lowest index.
// UnitBall: {||x|| <= 1}; x*(theta) = theta/||theta||, e_1 at theta = 0.
// ScaledHypercube: vertices of {-1/sqrt(d), +1/sqrt(d)}^d. Vertex index k has
//   coordinate i positive iff bit i of k is 0, so index 0 is the all-positive
//   vertex and the sign rule (zero -> positive) reproduces lowest-index
//   tie-breaking.
class ArmSet {
 public:
  enum class Kind { kFinite, kUnitBall, kScaledHypercube };

  static ArmSet Finite(std::vector<Eigen::VectorXd> arms);
  static ArmSet UnitBall(int dim);
  static ArmSet ScaledHypercube(int dim);
  // One arm per line, whitespace-separated reals. Blank lines and lines
  // starting with '#' are skipped.
  static ArmSet LoadFinite(const std::string& path);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Number of enumerable arms; 0 for the unit ball.
  std::int64_t size() const;
  Eigen::VectorXd ArmAt(std::int64_t index) const;
  const std::vector<Eigen::VectorXd>& arms() const { return arms_; }

  BestArm Best(const Eigen::VectorXd& theta) const;
  // J(theta) = max_x x^T theta.
  double SupportValue(const Eigen::VectorXd& theta) const;
  // Central differences of SupportValue with step h per coordinate.
  FdGradient GradJFd(const Eigen::VectorXd& theta, double h = 1e-5) const;

  // A uniformly random element: uniform index for enumerable sets, uniform in
  // the ball otherwise.
  BestArm Sample(Rng& rng) const;

 private:
  ArmSet(Kind kind, int dim, std::vector<Eigen::VectorXd> arms)
      : kind_(kind), dim_(dim), arms_(std::move(arms)) {}

  void CheckDim(const Eigen::VectorXd& theta) const;
  bool NearTie(const Eigen::VectorXd& theta, double h) const;

  Kind kind_;
  int dim_;
  std::vector<Eigen::VectorXd> arms_;
};

}  // namespace tslab

#endif  // TSLAB_ARM_SET_H_
