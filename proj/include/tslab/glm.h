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

#ifndef TSLAB_GLM_H_
#define TSLAB_GLM_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "Eigen/Core"

namespace tslab {

// Strictly increasing link mu with slope bounds on the admissible region
// |z| <= z_max:  c_mu <= mu'(z) <= k_mu.
struct LinkFunction {
  std::string name;
  std::function<double(double)> mu;
  std::function<double(double)> mu_prime;
  double k_mu = 1.0;
  double c_mu = 1.0;
  double z_max = 1.0;

  static LinkFunction Identity();
  // Logistic link with the admissible region {||theta|| <= 2S, ||x|| <= 1},
  // so z_max = 2S and c_mu = mu'(2S).
  static LinkFunction Logistic(double param_bound);

  // Spot-checks monotonicity and the slope bounds on a 1000-point grid over
  // [-z_max, z_max]. Throws InvalidArgument on failure.
  void Validate() const;
};

// Observation history, with exactly repeated feature vectors merged into a
// single entry holding a count and a reward sum. The score and Hessian only
// depend on these sufficient statistics.
class GlmHistory {
 public:
  struct Entry {
    Eigen::VectorXd x;
    std::int64_t count = 0;
    double reward_sum = 0.0;
  };

  explicit GlmHistory(int dim);

  void Add(const Eigen::VectorXd& x, double r);

  int dim() const { return dim_; }
  std::int64_t size() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  int dim_;
  std::int64_t total_ = 0;
  std::vector<Entry> entries_;
};

struct GlmOptions {
  double lambda = 1.0;
  double tol = 1e-8;
  int max_iter = 100;
  // Iterates are projected onto ||theta|| <= radius (2S by convention).
  double radius = 2.0;
};

// Score g(theta) = sum_s (r_s - mu(x_s^T theta)) x_s.
Eigen::VectorXd GlmScore(const GlmHistory& history, const LinkFunction& link,
                         const Eigen::VectorXd& theta);

// ||g(theta)||_{V^{-1}} with V = lambda I + sum_s x_s x_s^T.
double GlmResidual(const GlmHistory& history, const LinkFunction& link,
                   double lambda, const Eigen::VectorXd& theta);

// Solves the score equation g(theta) = 0 by damped Newton steps, halving the
// step until ||g||_{V^{-1}} decreases. Returns once ||g||_{V^{-1}} <= tol.
// Throws ConvergenceFailure (with the best iterate) otherwise.
Eigen::VectorXd GlmEstimate(const GlmHistory& history,
                            const LinkFunction& link,
                            const GlmOptions& options,
                            const Eigen::VectorXd* warm_start = nullptr);

}  // namespace tslab

#endif  // TSLAB_GLM_H_
