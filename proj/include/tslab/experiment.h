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

#ifndef TSLAB_EXPERIMENT_H_
#define TSLAB_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tslab/confidence.h"
#include "tslab/policy.h"
#include "tslab/simulator.h"

namespace tslab {

// Run configuration, read from a JSON file (see docs/config.md).
struct ExperimentConfig {
  std::string problem = "linear";  // linear | glm | rlo
  int d = 2;
  std::int64_t T = 1000;

  // unit_ball | hypercube | random_finite | explicit | file
  std::string arms_kind = "unit_ball";
  int arms_count = 50;
  std::string arms_path;
  std::vector<std::vector<double>> arms;

  // Either an explicit vector or a random direction with the given norm.
  std::vector<double> theta_star;
  double theta_norm = 0.5;

  std::string policy = "lints";  // lints | glmts | rlots | greedy | eps_greedy
  double eps = 0.1;
  std::string dist = "gaussian";  // gaussian | uniform_ball | uniform_sphere
  std::string link = "logistic";  // identity | logistic (glm only)
  std::string penalty = "quadratic";  // quadratic | l1box (rlo only)
  double pen_weight = 0.5;
  std::string noise = "gaussian";  // gaussian | uniform | bernoulli

  double R = 1.0;
  double S = 1.0;
  double lambda = 1.0;
  double delta = 0.1;

  std::uint64_t master_seed = 1;
  int seeds = 1;
  std::vector<std::uint64_t> seed_list;
  // fixed: one instance (arms, theta*) per dimension shared by all seeds;
  // per_seed: a fresh instance for every seed.
  std::string instance = "fixed";
  bool det_check = true;
  std::string out = "out";
  int threads = 1;

  // Sweep grids; an absent axis keeps the base value.
  bool has_sweep = false;
  std::vector<int> sweep_d;
  std::vector<std::int64_t> sweep_T;
  std::vector<std::string> sweep_dist;
  std::vector<std::string> sweep_policy;
};

// Parses and validates. Throws InvalidArgument with a readable message.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Checks the modelling assumptions: ||theta*|| <= S, arm norms <= 1,
// lambda >= 1 when the determinant check is on, policy/problem agreement.
void ValidateConfig(const ExperimentConfig& config);

// Seed values in run order: seed_list if given, else 0..seeds-1.
std::vector<std::uint64_t> SeedValues(const ExperimentConfig& config);

struct Instance {
  Environment env;
  PolicySpec policy;
  ConfidenceParams params;
};

// Builds the environment, policy and constants for one seed. Random arms and
// random theta* come from a generator keyed by (master seed, d) or, for
// per-seed instances, (master seed, d, seed).
Instance BuildInstance(const ExperimentConfig& config, std::uint64_t seed);

// Noise scale actually used: Bernoulli rewards are 1/2-sub-Gaussian and
// override R.
double EffectiveNoiseScale(const ExperimentConfig& config);

// Runs one seed in sweep cell `cell`. Generators are keyed by
// (master seed, cell, seed), so results do not depend on scheduling.
TrajectoryRecord RunEpisode(const ExperimentConfig& config, std::uint64_t seed,
                            std::uint64_t cell = 0);

// Runs all seeds of the config on up to `threads` worker threads. Records are
// returned in seed order.
std::vector<TrajectoryRecord> RunSeeds(const ExperimentConfig& config,
                                       std::uint64_t cell = 0,
                                       int threads = 1);

// Expands the sweep grids into one config per cell (d-major, then T, dist,
// policy). Throws InvalidArgument if there is no sweep or any axis is empty.
std::vector<ExperimentConfig> ExpandSweep(const ExperimentConfig& config);

}  // namespace tslab

#endif  // TSLAB_EXPERIMENT_H_
