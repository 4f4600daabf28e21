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

#include "tslab/arm_set.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "tslab/errors.h"
#include "tslab/linalg.h"

namespace tslab {

ArmSet ArmSet::Finite(std::vector<Eigen::VectorXd> arms) {
  if (arms.empty()) throw InvalidArgument("ArmSet::Finite: no arms");
  const auto dim = arms.front().size();
  if (dim < 1) throw InvalidArgument("ArmSet::Finite: zero-dimensional arm");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const Eigen::VectorXd& x = arms[i];
    if (x.size() != dim) {
      throw InvalidArgument("ArmSet::Finite: arm " + std::to_string(i) +
                            " has a different dimension");
    }
    if (!x.allFinite()) {
      throw InvalidArgument("ArmSet::Finite: arm " + std::to_string(i) +
                            " is not finite");
    }
    if (x.norm() > 1.0 + kArmNormSlack) {
      throw InvalidArgument("ArmSet::Finite: arm " + std::to_string(i) +
                            " has norm > 1");
    }
  }
  return ArmSet(Kind::kFinite, static_cast<int>(dim), std::move(arms));
}

ArmSet ArmSet::UnitBall(int dim) {
  if (dim < 1) throw InvalidArgument("ArmSet::UnitBall: dim must be >= 1");
  return ArmSet(Kind::kUnitBall, dim, {});
}

ArmSet ArmSet::ScaledHypercube(int dim) {
  if (dim < 1) {
    throw InvalidArgument("ArmSet::ScaledHypercube: dim must be >= 1");
  }
  return ArmSet(Kind::kScaledHypercube, dim, {});
}

ArmSet ArmSet::LoadFinite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("ArmSet::LoadFinite: cannot open " + path);
  std::vector<Eigen::VectorXd> arms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw InvalidArgument("ArmSet::LoadFinite: bad number '" + token +
                              "' at " + path + ":" + std::to_string(line_no));
      }
    }
    arms.push_back(Eigen::Map<Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return Finite(std::move(arms));
}

std::int64_t ArmSet::size() const {
  switch (kind_) {
    case Kind::kFinite:
      return static_cast<std::int64_t>(arms_.size());
    case Kind::kScaledHypercube:
      return dim_ >= 63 ? std::numeric_limits<std::int64_t>::max()
                        : (std::int64_t{1} << dim_);
    case Kind::kUnitBall:
      break;
  }
  return 0;
}

Eigen::VectorXd ArmSet::ArmAt(std::int64_t index) const {
  if (index < 0 || index >= size()) {
    throw InvalidArgument("ArmSet::ArmAt: index out of range");
  }
  if (kind_ == Kind::kFinite) return arms_[static_cast<std::size_t>(index)];
  const double s = 1.0 / std::sqrt(static_cast<double>(dim_));
  Eigen::VectorXd x(dim_);
  for (int i = 0; i < dim_; ++i) x(i) = ((index >> i) & 1) ? -s : s;
  return x;
}

void ArmSet::CheckDim(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim_) {
    throw InvalidArgument("ArmSet: theta has dimension " +
                          std::to_string(theta.size()) + ", expected " +
                          std::to_string(dim_));
  }
}

BestArm ArmSet::Best(const Eigen::VectorXd& theta) const {
  CheckDim(theta);
  BestArm best;
  switch (kind_) {
    case Kind::kFinite: {
      best.index = 0;
      best.value = arms_[0].dot(theta);
      for (std::size_t i = 1; i < arms_.size(); ++i) {
        const double v = arms_[i].dot(theta);
        if (v > best.value) {
          best.value = v;
          best.index = static_cast<std::int64_t>(i);
        }
      }
      best.arm = arms_[static_cast<std::size_t>(best.index)];
      break;
    }
    case Kind::kUnitBall: {
      const double norm = theta.norm();
      if (norm > 0.0) {
        best.arm = theta / norm;
      } else {
        best.arm = Eigen::VectorXd::Unit(dim_, 0);
      }
      best.value = best.arm.dot(theta);
      break;
    }
    case Kind::kScaledHypercube: {
      const double s = 1.0 / std::sqrt(static_cast<double>(dim_));
      best.arm.resize(dim_);
      best.index = 0;
      for (int i = 0; i < dim_; ++i) {
        if (theta(i) < 0.0) {
          best.arm(i) = -s;
          if (i < 63) best.index |= std::int64_t{1} << i;
        } else {
          best.arm(i) = s;
        }
      }
      if (dim_ >= 63) best.index = -1;
      best.value = best.arm.dot(theta);
      break;
    }
  }
  return best;
}

double ArmSet::SupportValue(const Eigen::VectorXd& theta) const {
  return Best(theta).value;
}

bool ArmSet::NearTie(const Eigen::VectorXd& theta, double h) const {
  const double window = 10.0 * h * theta.norm();
  switch (kind_) {
    case Kind::kFinite: {
      double top = -std::numeric_limits<double>::infinity();
      double second = top;
      for (const auto& x : arms_) {
        const double v = x.dot(theta);
        if (v > top) {
          second = top;
          top = v;
        } else if (v > second) {
          second = v;
        }
      }
      return arms_.size() > 1 && top - second <= window;
    }
    case Kind::kUnitBall:
      // J = ||theta|| is smooth away from the origin.
      return theta.norm() <= 10.0 * h;
    case Kind::kScaledHypercube: {
      // Flipping coordinate i costs 2|theta_i|/sqrt(d).
      const double s = 1.0 / std::sqrt(static_cast<double>(dim_));
      return (2.0 * s * theta.cwiseAbs()).minCoeff() <= window;
    }
  }
  return false;
}

FdGradient ArmSet::GradJFd(const Eigen::VectorXd& theta, double h) const {
  CheckDim(theta);
  if (!(h > 0.0)) throw InvalidArgument("GradJFd: h must be positive");
  FdGradient out;
  out.grad.resize(dim_);
  Eigen::VectorXd probe = theta;
  for (int i = 0; i < dim_; ++i) {
    probe(i) = theta(i) + h;
    const double up = SupportValue(probe);
    probe(i) = theta(i) - h;
    const double down = SupportValue(probe);
    probe(i) = theta(i);
    out.grad(i) = (up - down) / (2.0 * h);
  }
  out.near_tie = NearTie(theta, h);
  return out;
}

BestArm ArmSet::Sample(Rng& rng) const {
  BestArm pick;
  switch (kind_) {
    case Kind::kFinite: {
      std::uniform_int_distribution<std::size_t> uniform(0, arms_.size() - 1);
      const std::size_t i = uniform(rng);
      pick.index = static_cast<std::int64_t>(i);
      pick.arm = arms_[i];
      break;
    }
    case Kind::kScaledHypercube: {
      const double s = 1.0 / std::sqrt(static_cast<double>(dim_));
      pick.arm.resize(dim_);
      pick.index = 0;
      for (int i = 0; i < dim_; ++i) {
        const bool negative = (rng() >> 63) != 0;
        pick.arm(i) = negative ? -s : s;
        if (negative && i < 63) pick.index |= std::int64_t{1} << i;
      }
      if (dim_ >= 63) pick.index = -1;
      break;
    }
    case Kind::kUnitBall: {
      std::normal_distribution<double> normal;
      Eigen::VectorXd g(dim_);
      for (int i = 0; i < dim_; ++i) g(i) = normal(rng);
      const double radius =
          std::pow(Uniform01(rng), 1.0 / static_cast<double>(dim_));
      pick.arm = radius * g / g.norm();
      break;
    }
  }
  return pick;
}

}  // namespace tslab
