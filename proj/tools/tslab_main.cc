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

// Command-line driver: run, sweep and verify.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tslab/commands.h"
#include "tslab/errors.h"
#include "tslab/experiment.h"

namespace {

struct ExperimentFlags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  int seeds = 0;
  int threads = 0;
};

void AddExperimentFlags(CLI::App* cmd, ExperimentFlags* flags) {
  cmd->add_option("--config", flags->config, "JSON config file")->required();
  cmd->add_option("--seed", flags->seed, "master seed (overrides config)");
  cmd->add_option("--seeds", flags->seeds, "number of seeds (overrides config)");
  cmd->add_option("--out", flags->out, "output directory");
  cmd->add_option("--threads", flags->threads, "worker threads");
}

// Loads the config and applies command-line overrides.
tslab::ExperimentConfig Resolve(const ExperimentFlags& flags,
                                const CLI::App& cmd) {
  tslab::ExperimentConfig config = tslab::LoadConfig(flags.config);
  if (cmd.count("--seed") > 0) config.master_seed = flags.seed;
  if (cmd.count("--seeds") > 0) {
    config.seeds = flags.seeds;
    config.seed_list.clear();
  }
  if (cmd.count("--threads") > 0) config.threads = flags.threads;
  tslab::ValidateConfig(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear Thompson sampling laboratory"};
  app.require_subcommand(0, 1);

  bool verify_alias = false;
  app.add_flag("--verify", verify_alias, "same as the verify subcommand");

  ExperimentFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one configuration over seeds");
  AddExperimentFlags(run, &run_flags);

  ExperimentFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
  AddExperimentFlags(sweep, &sweep_flags);

  tslab::VerifyRequest request;
  std::string verify_out;
  CLI::App* verify =
      app.add_subcommand("verify", "Monte Carlo check of the sampling laws");
  for (CLI::App* target : {static_cast<CLI::App*>(&app), verify}) {
    target->add_flag("--break-dist", request.break_dist,
                     "append a degenerate law that must fail");
    target->add_option("--samples", request.samples, "draws per clause");
    target->add_option("--seed", request.master_seed, "master seed");
    target->add_option("--out", verify_out, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tslab::kExitBadConfig;
  }

  try {
    if (run->parsed()) {
      const auto config = Resolve(run_flags, *run);
      return tslab::CmdRun(config,
                           tslab::ResolveOutDir(run_flags.out, config.out),
                           std::cerr);
    }
    if (sweep->parsed()) {
      const auto config = Resolve(sweep_flags, *sweep);
      return tslab::CmdSweep(
          config, tslab::ResolveOutDir(sweep_flags.out, config.out), std::cerr);
    }
    if (verify->parsed() || verify_alias) {
      return tslab::CmdVerify(
          request, tslab::ResolveOutDir(verify_out, "verify_out"), std::cerr);
    }
  } catch (const tslab::InvalidArgument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return tslab::kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tslab::kExitFailure;
  }
  std::cerr << app.help();
  return tslab::kExitBadConfig;
}
