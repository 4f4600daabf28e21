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

#include "tslab/distcheck.h"

#include <cmath>
#include <random>
#include <string>

#include "tslab/errors.h"
#include "tslab/special_functions.h"

namespace tslab {
namespace {

constexpr double kUnitTol = 1e-9;
constexpr std::int64_t kMinSamples = 1000;
constexpr std::uint64_t kDistcheckStream = 0x6469737463686bULL;

Eigen::VectorXd RandomUnit(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(dim);
  do {
    for (int i = 0; i < dim; ++i) u(i) = normal(rng);
  } while (u.norm() == 0.0);
  return u / u.norm();
}

}  // namespace

Proportion WilsonInterval(std::int64_t hits, std::int64_t trials, double z) {
  if (trials <= 0 || hits < 0 || hits > trials) {
    throw InvalidArgument("WilsonInterval: need 0 <= hits <= trials, trials > 0");
  }
  Proportion p;
  p.hits = hits;
  p.trials = trials;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  p.estimate = phat;
  p.lo = std::max(0.0, center - half);
  p.hi = std::min(1.0, center + half);
  return p;
}

Proportion McAnticoncentration(const TSDistribution& dist,
                               const Eigen::VectorXd& u, std::int64_t n,
                               Rng& rng) {
  if (u.size() != dist.dim()) {
    throw InvalidArgument("McAnticoncentration: dimension mismatch");
  }
  if (std::fabs(u.norm() - 1.0) > kUnitTol) {
    throw InvalidArgument("McAnticoncentration: u is not a unit vector");
  }
  if (n < kMinSamples) {
    throw InvalidArgument("McAnticoncentration: need at least 1000 samples");
  }
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (u.dot(dist.Sample(rng)) >= 1.0) ++hits;
  }
  return WilsonInterval(hits, n);
}

Proportion McConcentration(const TSDistribution& dist, double delta,
                           std::int64_t n, Rng& rng) {
  if (n < kMinSamples) {
    throw InvalidArgument("McConcentration: need at least 1000 samples");
  }
  const double radius = dist.ConcentrationRadius(delta);
  std::int64_t inside = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (dist.Sample(rng).norm() <= radius) ++inside;
  }
  return WilsonInterval(inside, n);
}

bool Def1Report::pass() const {
  for (const auto& c : clauses) {
    if (!c.pass) return false;
  }
  return true;
}

Def1Report VerifyDef1(const TSDistribution& dist, const VerifyOptions& options,
                      Rng& rng, const std::string& cell_prefix) {
  Def1Report report;
  const int d = dist.dim();
  const std::string base =
      (cell_prefix.empty() ? dist.name() + "/d" + std::to_string(d)
                           : cell_prefix);
  for (int k = 0; k < options.directions; ++k) {
    const Eigen::VectorXd u = RandomUnit(d, rng);
    const Proportion est = McAnticoncentration(dist, u, options.samples, rng);
    ClauseResult anti;
    anti.cell_id = base + "/u" + std::to_string(k);
    anti.dist = dist.name();
    anti.dim = d;
    anti.clause = "anticoncentration";
    anti.estimate = est.estimate;
    anti.lo = est.lo;
    anti.hi = est.hi;
    if (dist.HasAnticoncentrationBound()) {
      const double p = dist.AnticoncentrationBound();
      anti.bound = p;
      anti.pass = est.estimate >= p - 3.0 * est.half_width();
    } else {
      anti.pass = est.lo > 0.0;
    }
    report.clauses.push_back(anti);

    if (dist.kind() == TSDistribution::Kind::kUniformBallSqrtD && d >= 2) {
      ClauseResult cap = anti;
      cap.clause = "cap_match";
      cap.bound = CapProbability(d);
      cap.pass = est.lo <= *cap.bound && *cap.bound <= est.hi;
      report.clauses.push_back(cap);
    }
  }
  for (std::size_t k = 0; k < options.deltas.size(); ++k) {
    const double delta = options.deltas[k];
    const Proportion cov = McConcentration(dist, delta, options.samples, rng);
    ClauseResult conc;
    conc.cell_id = base + "/delta" + std::to_string(k);
    conc.dist = dist.name();
    conc.dim = d;
    conc.clause = "concentration";
    conc.estimate = cov.estimate;
    conc.lo = cov.lo;
    conc.hi = cov.hi;
    conc.bound = 1.0 - delta;
    conc.pass = cov.estimate >= 1.0 - delta;
    report.clauses.push_back(conc);
  }
  return report;
}

Def1Report VerifyGrid(const std::vector<std::string>& dists,
                      const std::vector<int>& dims,
                      const VerifyOptions& options, std::uint64_t master_seed,
                      bool break_dist) {
  Def1Report report;
  std::uint64_t cell = 0;
  auto run_cell = [&](const TSDistribution& dist) {
    Rng rng = MakeRng({master_seed, kDistcheckStream, cell++});
    Def1Report part = VerifyDef1(dist, options, rng);
    report.clauses.insert(report.clauses.end(), part.clauses.begin(),
                          part.clauses.end());
  };
  for (const auto& name : dists) {
    for (int d : dims) run_cell(TSDistribution::FromName(name, d));
  }
  if (break_dist) {
    for (int d : dims) run_cell(TSDistribution::FromName("zero", d));
  }
  return report;
}

nlohmann::json ReportToJson(const Def1Report& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.clauses) {
    nlohmann::json row = {
        {"cell_id", c.cell_id},   {"dist", c.dist},
        {"d", c.dim},             {"clause", c.clause},
        {"estimate", c.estimate}, {"interval", {c.lo, c.hi}},
        {"pass", c.pass}};
    row["bound"] = c.bound ? nlohmann::json(*c.bound) : nlohmann::json();
    cells.push_back(std::move(row));
  }
  return {{"pass", report.pass()}, {"cells", std::move(cells)}};
}

}  // namespace tslab
