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

#ifndef TSLAB_LINALG_H_
#define TSLAB_LINALG_H_

#include <cstdint>

#include "Eigen/Core"

namespace tslab {

// Numerical tolerances for the design-matrix machinery.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kInverseTol = 1e-8;
inline constexpr double kSqrtTol = 1e-8;
inline constexpr double kLogDetTol = 1e-6;
inline constexpr double kEigenFloorTol = 1e-9;
inline constexpr double kSymSqrtAsymmetryTol = 1e-9;
inline constexpr double kQuadFormNegativeTol = 1e-12;
inline constexpr double kArmNormSlack = 1e-12;

// Regularized design matrix V = lambda*I + sum x x^T together with its
// inverse, the symmetric root of the inverse, the reward-weighted feature
// sum b = sum x r and log det V. Plain value type.
class DesignState {
 public:
  DesignState(int dim, double lambda);

  // Adds one observation (x, r). The inverse is updated by a rank-one
  // correction and re-symmetrized; if it stops being positive definite the
  // inverse is recomputed from V, and NumericalDegeneracy is thrown only if
  // that also fails.
  void Absorb(const Eigen::VectorXd& x, double r);

  int dim() const { return dim_; }
  double lambda() const { return lambda_; }
  std::int64_t t() const { return t_; }
  const Eigen::MatrixXd& V() const { return v_; }
  const Eigen::MatrixXd& V_inv() const { return v_inv_; }
  const Eigen::MatrixXd& V_inv_sqrt() const { return v_inv_sqrt_; }
  const Eigen::VectorXd& b() const { return b_; }
  double log_det_V() const { return log_det_v_; }

  // Number of times the rank-one path had to be replaced by a full inverse.
  int recompute_count() const { return recompute_count_; }

 private:
  void RefreshRoot();

  int dim_;
  double lambda_;
  std::int64_t t_ = 0;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd v_inv_;
  Eigen::MatrixXd v_inv_sqrt_;
  Eigen::VectorXd b_;
  double log_det_v_;
  int recompute_count_ = 0;
};

// sqrt(x^T M x) for symmetric PSD M. Tiny negative quadratic forms from
// rounding are clamped to zero; anything below -kQuadFormNegativeTol throws
// NumericalDegeneracy.
double WeightedNorm(const Eigen::MatrixXd& m, const Eigen::VectorXd& x);

// Unique symmetric PSD square root, via eigendecomposition with negative
// eigenvalues clamped to zero.
Eigen::MatrixXd SymSqrt(const Eigen::MatrixXd& m);

}  // namespace tslab

#endif  // TSLAB_LINALG_H_
