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

#include "tslab/linalg.h"

#include <cmath>
#include <string>

#include "Eigen/Cholesky"
#include "Eigen/Eigenvalues"
#include "tslab/errors.h"

namespace tslab {
namespace {

// Symmetric root from an eigendecomposition; returns the smallest eigenvalue.
double RootFromEigen(const Eigen::MatrixXd& m, Eigen::MatrixXd* root) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd& values = eig.eigenvalues();
  Eigen::VectorXd sqrt_values = values.cwiseMax(0.0).cwiseSqrt();
  *root = eig.eigenvectors() * sqrt_values.asDiagonal() *
          eig.eigenvectors().transpose();
  *root = 0.5 * (*root + root->transpose());
  return values.minCoeff();
}

}  // namespace

DesignState::DesignState(int dim, double lambda) : dim_(dim), lambda_(lambda) {
  if (dim < 1) throw InvalidArgument("DesignState: dim must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("DesignState: lambda must be positive and finite");
  }
  v_ = lambda * Eigen::MatrixXd::Identity(dim, dim);
  v_inv_ = (1.0 / lambda) * Eigen::MatrixXd::Identity(dim, dim);
  v_inv_sqrt_ = (1.0 / std::sqrt(lambda)) * Eigen::MatrixXd::Identity(dim, dim);
  b_ = Eigen::VectorXd::Zero(dim);
  log_det_v_ = dim * std::log(lambda);
}

void DesignState::Absorb(const Eigen::VectorXd& x, double r) {
  if (x.size() != dim_) {
    throw InvalidArgument("DesignState::Absorb: dimension mismatch");
  }
  if (!x.allFinite() || !std::isfinite(r)) {
    throw InvalidArgument("DesignState::Absorb: non-finite observation");
  }
  const Eigen::VectorXd v_inv_x = v_inv_ * x;
  const double q = std::max(x.dot(v_inv_x), 0.0);

  v_.noalias() += x * x.transpose();
  v_inv_.noalias() -= (v_inv_x * v_inv_x.transpose()) / (1.0 + q);
  v_inv_ = 0.5 * (v_inv_ + v_inv_.transpose()).eval();
  b_ += r * x;
  ++t_;
  log_det_v_ += std::log1p(q);

  RefreshRoot();
}

void DesignState::RefreshRoot() {
  if (RootFromEigen(v_inv_, &v_inv_sqrt_) > 0.0) return;
  // Rank-one drift broke positive definiteness; rebuild from V.
  ++recompute_count_;
  Eigen::LLT<Eigen::MatrixXd> llt(v_);
  if (llt.info() != Eigen::Success) {
    throw NumericalDegeneracy("DesignState: V is not positive definite");
  }
  v_inv_ = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
  v_inv_ = 0.5 * (v_inv_ + v_inv_.transpose()).eval();
  if (RootFromEigen(v_inv_, &v_inv_sqrt_) <= 0.0) {
    throw NumericalDegeneracy(
        "DesignState: inverse design matrix not positive definite after "
        "full recompute at step " +
        std::to_string(t_));
  }
}

double WeightedNorm(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  if (m.rows() != x.size() || m.cols() != x.size()) {
    throw InvalidArgument("WeightedNorm: dimension mismatch");
  }
  const double q = x.dot(m * x);
  if (q < -kQuadFormNegativeTol) {
    throw NumericalDegeneracy("WeightedNorm: negative quadratic form " +
                              std::to_string(q));
  }
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

Eigen::MatrixXd SymSqrt(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("SymSqrt: not square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymSqrtAsymmetryTol) {
    throw InvalidArgument("SymSqrt: matrix is not symmetric");
  }
  Eigen::MatrixXd root;
  RootFromEigen(0.5 * (m + m.transpose()), &root);
  return root;
}

}  // namespace tslab
