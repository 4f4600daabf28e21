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

#include "tslab/commands.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "tslab/distcheck.h"
#include "tslab/errors.h"
#include "tslab/report.h"

namespace tslab {
namespace {

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void MakeDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
}

}  // namespace

std::string ResolveOutDir(const std::string& flag_value,
                          const std::string& config_value) {
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env) {
    return env;
  }
  return flag_value.empty() ? config_value : flag_value;
}

int CmdRun(const ExperimentConfig& config, const std::string& out_dir,
           std::ostream& log) {
  try {
    ValidateConfig(config);
    BuildInstance(config, SeedValues(config).front());
  } catch (const InvalidArgument& e) {
    log << "invalid config: " << e.what() << '\n';
    return kExitBadConfig;
  }
  try {
    const std::vector<TrajectoryRecord> records =
        RunSeeds(config, 0, config.threads);
    MakeDir(out_dir);
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : records) {
      auto csv = OpenOut(std::filesystem::path(out_dir) /
                         ("steps_seed" + std::to_string(r.seed) + ".csv"));
      WriteStepsCsv(csv, r);
      runs.push_back(SummaryToJson(r));
    }
    const CellAggregate agg = Aggregate(records, config.delta);
    nlohmann::json config_json = ConfigToJson(config);
    config_json.erase("threads");
    const nlohmann::json summary = {{"config", config_json},
                                    {"delta_prime",
                                     config.delta /
                                         (4.0 * std::max<std::int64_t>(
                                                    config.T, 1))},
                                    {"runs", runs},
                                    {"aggregate", AggregateToJson(agg)}};
    OpenOut(std::filesystem::path(out_dir) / "summary.json")
        << summary.dump(2) << '\n';
    log << "runs=" << agg.runs << " mean_cum_regret=" << agg.mean_cum_regret
        << " optimism=" << agg.optimism_frequency << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    log << "run failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

int CmdSweep(const ExperimentConfig& config, const std::string& out_dir,
             std::ostream& log) {
  std::vector<ExperimentConfig> cells;
  try {
    cells = ExpandSweep(config);
    for (const auto& cell : cells) BuildInstance(cell, SeedValues(cell).front());
  } catch (const InvalidArgument& e) {
    log << "invalid config: " << e.what() << '\n';
    return kExitBadConfig;
  }
  try {
    MakeDir(out_dir);
    auto csv = OpenOut(std::filesystem::path(out_dir) / "sweep.csv");
    csv << kSweepCsvHeader << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto records = RunSeeds(cells[i], i, config.threads);
      const CellAggregate agg = Aggregate(records, cells[i].delta);
      WriteSweepRow(csv, static_cast<int>(i), cells[i], agg);
      log << "cell " << i << " d=" << cells[i].d << " T=" << cells[i].T
          << " dist=" << cells[i].dist << " policy=" << cells[i].policy
          << " mean_cum_regret=" << agg.mean_cum_regret << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "sweep failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

int CmdVerify(const VerifyRequest& request, const std::string& out_dir,
              std::ostream& log) {
  try {
    VerifyOptions options;
    options.samples = request.samples;
    const Def1Report report =
        VerifyGrid({"gaussian", "uniform_ball", "uniform_sphere"},
                   {2, 5, 10, 20}, options, request.master_seed,
                   request.break_dist);
    MakeDir(out_dir);
    OpenOut(std::filesystem::path(out_dir) / "verify.json")
        << ReportToJson(report).dump(2) << '\n';
    int failed = 0;
    for (const auto& c : report.clauses) {
      if (!c.pass) {
        ++failed;
        log << "FAIL " << c.cell_id << ' ' << c.clause
            << " estimate=" << c.estimate << '\n';
      }
    }
    log << report.clauses.size() - failed << '/' << report.clauses.size()
        << " clauses passed\n";
    return report.pass() ? kExitOk : kExitFailure;
  } catch (const InvalidArgument& e) {
    log << "invalid request: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    log << "verify failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace tslab
