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

#ifndef TSLAB_DISTCHECK_H_
#define TSLAB_DISTCHECK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "json.hpp"
#include "tslab/rng.h"
#include "tslab/ts_distribution.h"

namespace tslab {

// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

// Binomial proportion with its Wilson score interval.
struct Proportion {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

Proportion WilsonInterval(std::int64_t hits, std::int64_t trials,
                          double z = kZ99);

// Monte Carlo estimate of P(u^T eta >= 1) with a 99% Wilson interval.
// u must be a unit vector (within 1e-9) and n >= 1000.
Proportion McAnticoncentration(const TSDistribution& dist,
                               const Eigen::VectorXd& u, std::int64_t n,
                               Rng& rng);

// Fraction of n samples with ||eta|| <= dist.ConcentrationRadius(delta).
Proportion McConcentration(const TSDistribution& dist, double delta,
                           std::int64_t n, Rng& rng);

// One pass/fail line of a verification report.
struct ClauseResult {
  std::string cell_id;
  std::string dist;
  int dim = 0;
  std::string clause;  // "anticoncentration", "cap_match" or "concentration"
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  std::optional<double> bound;
  bool pass = false;
};

struct Def1Report {
  std::vector<ClauseResult> clauses;
  bool pass() const;
};

struct VerifyOptions {
  std::int64_t samples = 100000;
  int directions = 5;
  std::vector<double> deltas = {0.1, 0.01};
};

// Checks both distribution conditions for one law:
//  - anti-concentration, for `directions` random unit u: the estimate must
//    reach p - 3 Wilson half-widths; laws without a closed-form p only need a
//    Wilson lower bound above zero;
//  - for the uniform ball, the estimate's interval must also contain the
//    exact cap probability;
//  - concentration, per delta: coverage >= 1 - delta.
Def1Report VerifyDef1(const TSDistribution& dist, const VerifyOptions& options,
                      Rng& rng, const std::string& cell_prefix = "");

// Runs VerifyDef1 over every (name, dim) pair, each cell with its own
// generator derived from (master_seed, cell index). With break_dist, an
// always-zero law is appended as a negative control.
Def1Report VerifyGrid(const std::vector<std::string>& dists,
                      const std::vector<int>& dims,
                      const VerifyOptions& options, std::uint64_t master_seed,
                      bool break_dist);

nlohmann::json ReportToJson(const Def1Report& report);

}  // namespace tslab

#endif  // TSLAB_DISTCHECK_H_
