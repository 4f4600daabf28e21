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

#include "tslab/report.h"

#include <charconv>
#include <cmath>

namespace tslab {

std::string FormatDouble(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void WriteStepsCsv(std::ostream& out, const TrajectoryRecord& record) {
  out << kStepsCsvHeader << '\n';
  for (const auto& s : record.steps) {
    out << s.t << ',';
    if (s.arm_index >= 0) {
      out << s.arm_index;
    } else {
      for (Eigen::Index i = 0; i < s.arm.size(); ++i) {
        if (i > 0) out << ';';
        out << FormatDouble(s.arm(i));
      }
    }
    out << ',' << FormatDouble(s.reward) << ',' << FormatDouble(s.inst_regret)
        << ',' << FormatDouble(s.cum_regret) << ',' << FormatDouble(s.rts)
        << ',' << FormatDouble(s.rrls) << ',' << int{s.optimistic()} << ','
        << int{s.hat_event()} << ',' << int{s.tilde_event()} << ','
        << FormatDouble(s.feat_norm) << ',' << FormatDouble(s.det_lhs) << ','
        << FormatDouble(s.det_mid) << '\n';
  }
}

nlohmann::json SummaryToJson(const TrajectoryRecord& record) {
  const TrajectorySummary& s = record.summary;
  return {
      {"seed", record.seed},
      {"steps", s.steps},
      {"cum_regret", s.cum_regret},
      {"cum_rts", s.cum_rts},
      {"cum_rrls", s.cum_rrls},
      {"optimism_frequency", s.optimism_frequency},
      {"conditional_optimism_frequency", s.conditional_optimism_frequency},
      {"hatE_violations", s.hat_violations},
      {"tildeE_violations", s.tilde_violations},
      {"det_lemma",
       {{"lhs", s.det.lhs},
        {"mid", s.det.mid},
        {"rhs", s.det.rhs},
        {"ok", s.det.ok},
        {"skipped", s.det.skipped}}},
      {"max_det_slack", s.max_det_slack},
      {"mean_optimism_gap", s.mean_optimism_gap},
      {"longest_non_optimistic_run", s.longest_non_optimistic_run},
      {"diagnostics",
       {{"glm_fallbacks", s.glm_fallbacks},
        {"inverse_recomputes", s.inverse_recomputes},
        {"warnings", s.warnings}}},
  };
}

CellAggregate Aggregate(const std::vector<TrajectoryRecord>& records,
                        double delta) {
  CellAggregate agg;
  agg.runs = static_cast<int>(records.size());
  if (records.empty()) return agg;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t steps = 0;
  std::int64_t optimistic = 0;
  std::int64_t cond_hits = 0;
  std::int64_t cond_trials = 0;
  int det_ok = 0;
  for (const auto& r : records) {
    const auto& s = r.summary;
    sum += s.cum_regret;
    sum_sq += s.cum_regret * s.cum_regret;
    steps += s.steps;
    optimistic += s.optimistic_steps;
    cond_hits += s.conditional_hits;
    cond_trials += s.hat_event_steps;
    det_ok += s.det.ok ? 1 : 0;
  }
  const double n = static_cast<double>(records.size());
  agg.mean_cum_regret = sum / n;
  agg.std_cum_regret =
      records.size() > 1
          ? std::sqrt(std::max(0.0, (sum_sq - n * agg.mean_cum_regret *
                                                  agg.mean_cum_regret) /
                                        (n - 1.0)))
          : 0.0;
  agg.optimism_frequency =
      steps == 0 ? 0.0 : static_cast<double>(optimistic) / steps;
  agg.conditional_optimism_frequency =
      cond_trials == 0 ? 0.0 : static_cast<double>(cond_hits) / cond_trials;
  if (records.size() >= 2) agg.events = EventViolationRates(records);
  agg.det_ok_fraction = det_ok / n;
  agg.monitor = MonitorFeatureNorms(records, delta);
  return agg;
}

nlohmann::json AggregateToJson(const CellAggregate& agg) {
  return {{"runs", agg.runs},
          {"mean_cum_regret", agg.mean_cum_regret},
          {"std_cum_regret", agg.std_cum_regret},
          {"optimism_frequency", agg.optimism_frequency},
          {"conditional_optimism_frequency",
           agg.conditional_optimism_frequency},
          {"hatE_fail", agg.events.hat_fail},
          {"tildeE_fail", agg.events.tilde_fail},
          {"joint_fail", agg.events.joint_fail},
          {"det_ok_fraction", agg.det_ok_fraction},
          {"azuma_bound", agg.monitor.bound},
          {"azuma_within_fraction", agg.monitor.fraction_within}};
}

void WriteSweepRow(std::ostream& out, int cell, const ExperimentConfig& c,
                   const CellAggregate& agg) {
  out << cell << ',' << c.problem << ',' << c.d << ',' << c.T << ',' << c.dist
      << ',' << c.policy << ',' << agg.runs << ','
      << FormatDouble(agg.mean_cum_regret) << ','
      << FormatDouble(agg.std_cum_regret) << ','
      << FormatDouble(agg.optimism_frequency) << ','
      << FormatDouble(agg.conditional_optimism_frequency) << ','
      << FormatDouble(agg.events.hat_fail) << ','
      << FormatDouble(agg.events.tilde_fail) << ','
      << FormatDouble(agg.events.joint_fail) << ','
      << FormatDouble(agg.det_ok_fraction) << ','
      << FormatDouble(agg.monitor.fraction_within) << '\n';
}

}  // namespace tslab
