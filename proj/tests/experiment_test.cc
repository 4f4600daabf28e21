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

#include "tslab/experiment.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "tslab/errors.h"
#include "tslab/report.h"

namespace tslab {
namespace {

using nlohmann::json;

json HardInstance(const std::string& policy, double phi) {
  return {{"d", 2},
          {"T", 1000},
          {"arms",
           {{"kind", "explicit"},
            {"arms", {{1.0, 0.0}, {std::cos(0.1), std::sin(0.1)}}}}},
          {"theta_star", {{"vector", {std::cos(phi), std::sin(phi)}}}},
          {"policy", policy},
          {"R", 0.1},
          {"seeds", 50}};
}

double MeanRegret(const std::vector<TrajectoryRecord>& records) {
  double sum = 0.0;
  for (const auto& r : records) sum += r.summary.cum_regret;
  return sum / records.size();
}

std::string Csv(const TrajectoryRecord& r) {
  std::ostringstream out;
  WriteStepsCsv(out, r);
  return out.str();
}

TEST(ConfigTest, Defaults) {
  const ExperimentConfig c = ConfigFromJson(json::object());
  EXPECT_EQ(c.problem, "linear");
  EXPECT_EQ(c.policy, "lints");
  EXPECT_EQ(SeedValues(c), std::vector<std::uint64_t>{0});
}

TEST(ConfigTest, RoundTrip) {
  json j = HardInstance("greedy", 0.5);
  j["sweep"] = {{"T", {10, 20}}};
  j["seed_list"] = {3, 9};
  const json once = ConfigToJson(ConfigFromJson(j));
  EXPECT_EQ(ConfigToJson(ConfigFromJson(once)), once);
  EXPECT_EQ(SeedValues(ConfigFromJson(j)), (std::vector<std::uint64_t>{3, 9}));
}

TEST(ConfigTest, RejectsInvalid) {
  const std::vector<json> bad = {
      {{"delta_prime", 0.01}},
      {{"detla", 0.1}},
      {{"arms", {{"kind", "unit_ball"}, {"cnt", 3}}}},
      {{"problem", "bandit"}},
      {{"theta_star", {{"random_norm", 2.0}}}},
      {{"theta_star", {{"vector", {0.9, 0.9}}}}},
      {{"theta_star", {{"vector", {0.1, 0.1, 0.1}}}}},
      {{"lambda", 0.5}},
      {{"delta", 1.0}},
      {{"policy", "rlots"}},
      {{"problem", "rlo"}},
      {{"policy", "glmts"}},
      {{"noise", "bernoulli"}},
      {{"arms", {{"kind", "explicit"}, {"arms", {{1.0, 1.0}}}}}},
      {{"arms", {{"kind", "explicit"}, {"arms", json::array()}}}},
      {{"arms", {{"kind", "file"}}}},
      {{"seeds", 0}},
      {{"eps", 1.5}},
      {{"dist", "cauchy"}},
      {{"sweep", {{"d", json::array()}}}},
      {{"sweep", json::object()}},
      {{"d", "two"}},
      json::array(),
  };
  for (const json& j : bad) {
    EXPECT_THROW(ConfigFromJson(j), InvalidArgument) << j.dump();
  }
}

TEST(ConfigTest, SmallLambdaNeedsDetCheckOff) {
  EXPECT_THROW(ConfigFromJson({{"lambda", 0.5}}), InvalidArgument);
  EXPECT_NO_THROW(ConfigFromJson({{"lambda", 0.5}, {"det_check", false}}));
}

TEST(ConfigTest, LoadAllowsComments) {
  const std::string path = ::testing::TempDir() + "cfg.json";
  {
    std::ofstream f(path);
    f << "// hard instance\n{\"d\": 3, /* inline */ \"T\": 5}\n";
  }
  const ExperimentConfig c = LoadConfig(path);
  EXPECT_EQ(c.d, 3);
  EXPECT_EQ(c.T, 5);
  EXPECT_THROW(LoadConfig(path + ".missing"), InvalidArgument);
}

TEST(RunEpisodeTest, ZeroHorizon) {
  const ExperimentConfig c = ConfigFromJson({{"T", 0}});
  const TrajectoryRecord r = RunEpisode(c, 0);
  EXPECT_TRUE(r.steps.empty());
  EXPECT_EQ(r.summary.cum_regret, 0.0);
  EXPECT_TRUE(r.summary.det.ok);
  EXPECT_EQ(Csv(r), std::string(kStepsCsvHeader) + "\n");
}

TEST(RunEpisodeTest, DeterministicAcrossThreadCounts) {
  ExperimentConfig c = ConfigFromJson({{"d", 3},
                                       {"T", 200},
                                       {"arms", {{"kind", "random_finite"}}},
                                       {"seeds", 6}});
  const auto one = RunSeeds(c, 0, 1);
  const auto again = RunSeeds(c, 0, 1);
  const auto four = RunSeeds(c, 0, 4);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(Csv(one[i]), Csv(again[i]));
    EXPECT_EQ(Csv(one[i]), Csv(four[i]));
  }
  EXPECT_NE(Csv(one[0]), Csv(one[1]));
}

TEST(RunEpisodeTest, InstanceSharing) {
  ExperimentConfig c = ConfigFromJson({{"d", 3},
                                       {"arms", {{"kind", "random_finite"}}}});
  const Instance a = BuildInstance(c, 0);
  const Instance b = BuildInstance(c, 1);
  EXPECT_EQ(a.env.theta_star(), b.env.theta_star());
  EXPECT_EQ(a.env.arm_set()->ArmAt(3), b.env.arm_set()->ArmAt(3));
  EXPECT_NEAR(a.env.theta_star().norm(), c.theta_norm, 1e-12);
  c.instance = "per_seed";
  EXPECT_NE(BuildInstance(c, 0).env.theta_star(),
            BuildInstance(c, 1).env.theta_star());
}

TEST(RunEpisodeTest, BernoulliUsesHalfNoiseScale) {
  const ExperimentConfig c = ConfigFromJson({{"problem", "glm"},
                                             {"policy", "glmts"},
                                             {"noise", "bernoulli"},
                                             {"R", 3.0}});
  EXPECT_EQ(EffectiveNoiseScale(c), 0.5);
  EXPECT_EQ(BuildInstance(c, 0).params.noise_scale(), 0.5);
}

TEST(RunEpisodeTest, SeedChangesOnlyItsOwnLane) {
  ExperimentConfig c = ConfigFromJson({{"T", 50}, {"seed_list", {4, 7}}});
  ExperimentConfig d = ConfigFromJson({{"T", 50}, {"seed_list", {7}}});
  EXPECT_EQ(Csv(RunSeeds(c)[1]), Csv(RunSeeds(d)[0]));
}

// The two arms are exactly tied under theta* at angle 0.05, so no policy can
// incur regret.
TEST(HardInstanceTest, SymmetricThetaIsATie) {
  for (const char* policy : {"lints", "greedy"}) {
    json j = HardInstance(policy, 0.05);
    j["seeds"] = 5;
    j["T"] = 200;
    for (const auto& r : RunSeeds(ConfigFromJson(j))) {
      EXPECT_NEAR(r.summary.cum_regret, 0.0, 1e-12);
    }
  }
}

TEST(HardInstanceTest, ThompsonSamplingBeatsGreedy) {
  const auto ts = RunSeeds(ConfigFromJson(HardInstance("lints", 0.5)));
  const auto greedy = RunSeeds(ConfigFromJson(HardInstance("greedy", 0.5)));
  EXPECT_LT(MeanRegret(ts), MeanRegret(greedy));
  // Greedy never leaves the first arm.
  for (const auto& r : greedy) {
    for (const auto& s : r.steps) ASSERT_EQ(s.arm_index, 0);
  }
}

TEST(SweepTest, ExpansionOrder) {
  const ExperimentConfig c = ConfigFromJson(
      {{"sweep",
        {{"d", {2, 3}}, {"T", {5, 6, 7}}, {"policy", {"lints", "greedy"}}}}});
  const auto cells = ExpandSweep(c);
  ASSERT_EQ(cells.size(), 12u);
  EXPECT_EQ(cells[0].d, 2);
  EXPECT_EQ(cells[0].T, 5);
  EXPECT_EQ(cells[1].policy, "greedy");
  EXPECT_EQ(cells[2].T, 6);
  EXPECT_EQ(cells[6].d, 3);
  EXPECT_FALSE(cells[0].has_sweep);
  EXPECT_THROW(ExpandSweep(ConfigFromJson(json::object())), InvalidArgument);
  EXPECT_THROW(
      ExpandSweep(ConfigFromJson(
          {{"theta_star", {{"vector", {0.1, 0.1}}}}, {"sweep", {{"d", {3}}}}})),
      InvalidArgument);
}

TEST(SweepTest, AggregateMatchesRecords) {
  const ExperimentConfig c = ConfigFromJson({{"T", 100}, {"seeds", 4}});
  const auto records = RunSeeds(c);
  const CellAggregate agg = Aggregate(records, c.delta);
  EXPECT_EQ(agg.runs, 4);
  EXPECT_NEAR(agg.mean_cum_regret, MeanRegret(records), 1e-12);
  std::int64_t opt = 0;
  for (const auto& r : records) opt += r.summary.optimistic_steps;
  EXPECT_NEAR(agg.optimism_frequency, opt / 400.0, 1e-15);
}

}  // namespace
}  // namespace tslab
