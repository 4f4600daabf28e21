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

#include "tslab/glm.h"

#include <cmath>
#include <string>

#include "Eigen/Cholesky"
#include "tslab/errors.h"

namespace tslab {
namespace {

constexpr int kValidationGrid = 1000;
constexpr double kSlopeSlack = 1e-12;
constexpr double kRidgeFraction = 1e-8;
constexpr int kMaxHalvings = 60;

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::VectorXd Project(Eigen::VectorXd theta, double radius) {
  const double norm = theta.norm();
  if (norm > radius) theta *= radius / norm;
  return theta;
}

Eigen::MatrixXd GramPlusRidge(const GlmHistory& history, double lambda) {
  const int d = history.dim();
  Eigen::MatrixXd v = lambda * Eigen::MatrixXd::Identity(d, d);
  for (const auto& e : history.entries()) {
    v.noalias() += static_cast<double>(e.count) * e.x * e.x.transpose();
  }
  return v;
}

double ResidualWith(const Eigen::LLT<Eigen::MatrixXd>& v_llt,
                    const Eigen::VectorXd& g) {
  return std::sqrt(std::max(g.dot(v_llt.solve(g)), 0.0));
}

}  // namespace

LinkFunction LinkFunction::Identity() {
  LinkFunction link;
  link.name = "identity";
  link.mu = [](double z) { return z; };
  link.mu_prime = [](double) { return 1.0; };
  link.k_mu = 1.0;
  link.c_mu = 1.0;
  link.z_max = 1e6;
  return link;
}

LinkFunction LinkFunction::Logistic(double param_bound) {
  if (!(param_bound > 0.0)) {
    throw InvalidArgument("LinkFunction::Logistic: S must be positive");
  }
  LinkFunction link;
  link.name = "logistic";
  link.mu = Sigmoid;
  link.mu_prime = [](double z) {
    const double s = Sigmoid(z);
    return s * (1.0 - s);
  };
  link.k_mu = 0.25;
  link.z_max = 2.0 * param_bound;
  link.c_mu = link.mu_prime(link.z_max);
  return link;
}

void LinkFunction::Validate() const {
  if (!mu || !mu_prime) throw InvalidArgument("LinkFunction: missing mu");
  if (!(c_mu > 0.0) || !(k_mu >= c_mu) || !(z_max > 0.0)) {
    throw InvalidArgument("LinkFunction '" + name +
                          "': need 0 < c_mu <= k_mu and z_max > 0");
  }
  double prev = mu(-z_max);
  for (int i = 1; i <= kValidationGrid; ++i) {
    const double z = -z_max + 2.0 * z_max * i / kValidationGrid;
    const double value = mu(z);
    if (!(value > prev)) {
      throw InvalidArgument("LinkFunction '" + name +
                            "' is not strictly increasing near z = " +
                            std::to_string(z));
    }
    prev = value;
    const double slope = mu_prime(z);
    if (slope < c_mu - kSlopeSlack || slope > k_mu + kSlopeSlack) {
      throw InvalidArgument("LinkFunction '" + name + "': mu'(" +
                            std::to_string(z) + ") outside [c_mu, k_mu]");
    }
  }
}

GlmHistory::GlmHistory(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("GlmHistory: dim must be >= 1");
}

void GlmHistory::Add(const Eigen::VectorXd& x, double r) {
  if (x.size() != dim_) throw InvalidArgument("GlmHistory: dimension mismatch");
  if (!x.allFinite() || !std::isfinite(r)) {
    throw InvalidArgument("GlmHistory: non-finite observation");
  }
  ++total_;
  for (auto& e : entries_) {
    if (e.x == x) {
      ++e.count;
      e.reward_sum += r;
      return;
    }
  }
  entries_.push_back({x, 1, r});
}

Eigen::VectorXd GlmScore(const GlmHistory& history, const LinkFunction& link,
                         const Eigen::VectorXd& theta) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(history.dim());
  for (const auto& e : history.entries()) {
    const double n = static_cast<double>(e.count);
    g += (e.reward_sum - n * link.mu(e.x.dot(theta))) * e.x;
  }
  return g;
}

double GlmResidual(const GlmHistory& history, const LinkFunction& link,
                   double lambda, const Eigen::VectorXd& theta) {
  Eigen::LLT<Eigen::MatrixXd> v_llt(GramPlusRidge(history, lambda));
  return ResidualWith(v_llt, GlmScore(history, link, theta));
}

Eigen::VectorXd GlmEstimate(const GlmHistory& history,
                            const LinkFunction& link,
                            const GlmOptions& options,
                            const Eigen::VectorXd* warm_start) {
  if (history.empty()) throw InvalidArgument("GlmEstimate: empty history");
  if (!(options.tol > 0.0)) throw InvalidArgument("GlmEstimate: tol <= 0");
  if (!(options.lambda > 0.0)) throw InvalidArgument("GlmEstimate: lambda <= 0");
  if (!(options.radius > 0.0)) throw InvalidArgument("GlmEstimate: radius <= 0");
  link.Validate();

  const int d = history.dim();
  Eigen::LLT<Eigen::MatrixXd> v_llt(GramPlusRidge(history, options.lambda));

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  if (warm_start != nullptr && warm_start->size() == d &&
      warm_start->allFinite()) {
    theta = Project(*warm_start, options.radius);
  }
  Eigen::VectorXd g = GlmScore(history, link, theta);
  double residual = ResidualWith(v_llt, g);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    if (residual <= options.tol) return theta;

    // Newton direction for g(theta) = 0; the Jacobian of g is -H.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (const auto& e : history.entries()) {
      const double w =
          static_cast<double>(e.count) * link.mu_prime(e.x.dot(theta));
      h.noalias() += w * e.x * e.x.transpose();
    }
    const double trace = h.trace();
    h.diagonal().array() += kRidgeFraction * (trace > 0.0 ? trace : 1.0);
    const Eigen::VectorXd step = h.ldlt().solve(g);

    double scale = 1.0;
    bool improved = false;
    for (int k = 0; k < kMaxHalvings; ++k, scale *= 0.5) {
      Eigen::VectorXd candidate = Project(theta + scale * step, options.radius);
      Eigen::VectorXd g_candidate = GlmScore(history, link, candidate);
      const double r_candidate = ResidualWith(v_llt, g_candidate);
      if (r_candidate < residual) {
        theta = std::move(candidate);
        g = std::move(g_candidate);
        residual = r_candidate;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (residual <= options.tol) return theta;
  throw ConvergenceFailure("GlmEstimate: score residual " +
                               std::to_string(residual) + " above tolerance",
                           theta, residual);
}

}  // namespace tslab
