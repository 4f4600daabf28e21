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

#ifndef TSLAB_COMMANDS_H_
#define TSLAB_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>

#include "tslab/experiment.h"

namespace tslab {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadConfig = 2;

// Environment variable that overrides every output directory.
inline constexpr const char* kOutDirEnv = "TSLAB_OUT_DIR";

// Resolves the output directory: the environment override wins, then the
// explicit flag, then the config value.
std::string ResolveOutDir(const std::string& flag_value,
                          const std::string& config_value);

// Writes <out>/steps_seed<k>.csv for every seed and <out>/summary.json.
int CmdRun(const ExperimentConfig& config, const std::string& out_dir,
           std::ostream& log);

// Writes <out>/sweep.csv with one aggregated row per grid cell.
int CmdSweep(const ExperimentConfig& config, const std::string& out_dir,
             std::ostream& log);

struct VerifyRequest {
  std::uint64_t master_seed = 1;
  std::int64_t samples = 100000;
  bool break_dist = false;
};
// Writes <out>/verify.json; returns kExitFailure iff any clause fails.
int CmdVerify(const VerifyRequest& request, const std::string& out_dir,
              std::ostream& log);

}  // namespace tslab

#endif  // TSLAB_COMMANDS_H_
