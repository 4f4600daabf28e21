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

#ifndef TSLAB_ERRORS_H_
#define TSLAB_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "Eigen/Core"

namespace tslab {

// Bad input to an operation: wrong dimension, out-of-range parameter,
// non-finite value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity that must be positive (semi-)definite lost that property.
class NumericalDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation has no defined result for this input (e.g. no closed-form
// anti-concentration constant for a distribution).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iterative solver stopped before reaching its tolerance. Carries the best
// iterate found so callers can decide whether to use it.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, Eigen::VectorXd best,
                     double residual)
      : std::runtime_error(what),
        best_(std::move(best)),
        residual_(residual) {}

  const Eigen::VectorXd& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Eigen::VectorXd best_;
  double residual_;
};

// A simulation step failed. Wraps the underlying message and names the step.
class EpisodeError : public std::runtime_error {
 public:
  EpisodeError(std::int64_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what),
        step_(step) {}

  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace tslab

#endif  // TSLAB_ERRORS_H_
