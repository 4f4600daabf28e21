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

#ifndef TSLAB_REPORT_H_
#define TSLAB_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tslab/experiment.h"
#include "tslab/simulator.h"

namespace tslab {

// 17 significant digits, enough to round-trip any double.
std::string FormatDouble(double v);

// Per-step CSV. Columns, in order:
//   t, arm_index_or_coords, reward, inst_regret, cum_regret, rts, rrls,
//   optimistic, hatE, tildeE, feat_norm, det_lhs, det_rhs
// arm_index_or_coords is the arm index for enumerable sets and the
// ';'-joined coordinates otherwise. Flags are 0/1. det_rhs is the log-det side
// 2 log(det V_{t+1} / det(lambda I)).
inline constexpr const char* kStepsCsvHeader =
    "t,arm_index_or_coords,reward,inst_regret,cum_regret,rts,rrls,optimistic,"
    "hatE,tildeE,feat_norm,det_lhs,det_rhs";
void WriteStepsCsv(std::ostream& out, const TrajectoryRecord& record);

nlohmann::json SummaryToJson(const TrajectoryRecord& record);

// Across-seed aggregate of one configuration.
struct CellAggregate {
  int runs = 0;
  double mean_cum_regret = 0.0;
  double std_cum_regret = 0.0;
  double optimism_frequency = 0.0;              // pooled over steps
  double conditional_optimism_frequency = 0.0;  // pooled over steps
  EventRates events;
  double det_ok_fraction = 1.0;
  MartingaleMonitor monitor;
};
CellAggregate Aggregate(const std::vector<TrajectoryRecord>& records,
                        double delta);
nlohmann::json AggregateToJson(const CellAggregate& agg);

inline constexpr const char* kSweepCsvHeader =
    "cell,problem,d,T,dist,policy,seeds,mean_cum_regret,std_cum_regret,"
    "optimism_frequency,conditional_optimism_frequency,hatE_fail,tildeE_fail,"
    "joint_fail,det_ok_fraction,azuma_within_fraction";
void WriteSweepRow(std::ostream& out, int cell, const ExperimentConfig& config,
                   const CellAggregate& agg);

}  // namespace tslab

#endif  // TSLAB_REPORT_H_
