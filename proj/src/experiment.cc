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

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "tslab/errors.h"

namespace tslab {
namespace {

constexpr std::uint64_t kInstanceStream = 0x696e7374616e6365ULL;
constexpr std::uint64_t kPolicyStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kSharedInstance = ~std::uint64_t{0};

template <typename T>
void Read(const nlohmann::json& j, const char* key, T* out) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config field '") + key +
                          "': " + e.what());
  }
}

void CheckKeys(const nlohmann::json& j, const char* where,
               std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) {
      throw InvalidArgument(std::string("unknown key '") + item.key() +
                            "' in " + where);
    }
  }
}

bool OneOf(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options) {
    if (v == o) return true;
  }
  return false;
}

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd RandomDirection(int d, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd g(d);
  do {
    for (int i = 0; i < d; ++i) g(i) = normal(rng);
  } while (g.norm() == 0.0);
  return g / g.norm();
}

ArmSet BuildArms(const ExperimentConfig& c, Rng& rng) {
  if (c.arms_kind == "unit_ball") return ArmSet::UnitBall(c.d);
  if (c.arms_kind == "hypercube") return ArmSet::ScaledHypercube(c.d);
  if (c.arms_kind == "file") {
    ArmSet set = ArmSet::LoadFinite(c.arms_path);
    if (set.dim() != c.d) {
      throw InvalidArgument("arm file dimension does not match d");
    }
    return set;
  }
  std::vector<Eigen::VectorXd> arms;
  if (c.arms_kind == "explicit") {
    for (const auto& a : c.arms) {
      if (static_cast<int>(a.size()) != c.d) {
        throw InvalidArgument("explicit arm dimension does not match d");
      }
      arms.push_back(ToVector(a));
    }
  } else {  // random_finite
    for (int i = 0; i < c.arms_count; ++i) {
      arms.push_back(RandomDirection(c.d, rng));
    }
  }
  return ArmSet::Finite(std::move(arms));
}

}  // namespace

ExperimentConfig ConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  if (j.contains("delta_prime")) {
    throw InvalidArgument("delta_prime is derived as delta/(4T); remove it");
  }
  CheckKeys(j, "config",
            {"problem", "d", "T", "arms", "theta_star", "policy", "eps", "dist",
             "link", "penalty", "noise", "R", "S", "lambda", "delta",
             "master_seed", "seeds", "seed_list", "instance", "det_check",
             "out", "threads", "sweep"});
  ExperimentConfig c;
  Read(j, "problem", &c.problem);
  Read(j, "d", &c.d);
  Read(j, "T", &c.T);
  if (j.contains("arms")) {
    const auto& a = j.at("arms");
    if (!a.is_object()) throw InvalidArgument("config field 'arms' must be an object");
    CheckKeys(a, "arms", {"kind", "count", "path", "arms"});
    Read(a, "kind", &c.arms_kind);
    Read(a, "count", &c.arms_count);
    Read(a, "path", &c.arms_path);
    Read(a, "arms", &c.arms);
  }
  if (j.contains("theta_star")) {
    const auto& t = j.at("theta_star");
    if (!t.is_object()) {
      throw InvalidArgument("config field 'theta_star' must be an object");
    }
    CheckKeys(t, "theta_star", {"vector", "random_norm"});
    Read(t, "vector", &c.theta_star);
    Read(t, "random_norm", &c.theta_norm);
  }
  Read(j, "policy", &c.policy);
  Read(j, "eps", &c.eps);
  Read(j, "dist", &c.dist);
  Read(j, "link", &c.link);
  if (j.contains("penalty")) {
    const auto& p = j.at("penalty");
    if (!p.is_object()) {
      throw InvalidArgument("config field 'penalty' must be an object");
    }
    CheckKeys(p, "penalty", {"kind", "weight"});
    Read(p, "kind", &c.penalty);
    Read(p, "weight", &c.pen_weight);
  }
  Read(j, "noise", &c.noise);
  Read(j, "R", &c.R);
  Read(j, "S", &c.S);
  Read(j, "lambda", &c.lambda);
  Read(j, "delta", &c.delta);
  Read(j, "master_seed", &c.master_seed);
  Read(j, "seeds", &c.seeds);
  Read(j, "seed_list", &c.seed_list);
  Read(j, "instance", &c.instance);
  Read(j, "det_check", &c.det_check);
  Read(j, "out", &c.out);
  Read(j, "threads", &c.threads);
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (!s.is_object()) throw InvalidArgument("config field 'sweep' must be an object");
    CheckKeys(s, "sweep", {"d", "T", "dist", "policy"});
    if (s.empty()) throw InvalidArgument("sweep has no axes");
    c.has_sweep = true;
    Read(s, "d", &c.sweep_d);
    Read(s, "T", &c.sweep_T);
    Read(s, "dist", &c.sweep_dist);
    Read(s, "policy", &c.sweep_policy);
    for (const char* key : {"d", "T", "dist", "policy"}) {
      if (s.contains(key) && s.at(key).empty()) {
        throw InvalidArgument(std::string("sweep axis '") + key + "' is empty");
      }
    }
  }
  ValidateConfig(c);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file " + path + ": " + e.what());
  }
  return ConfigFromJson(j);
}

nlohmann::json ConfigToJson(const ExperimentConfig& c) {
  nlohmann::json arms = {{"kind", c.arms_kind}};
  if (c.arms_kind == "random_finite") arms["count"] = c.arms_count;
  if (c.arms_kind == "file") arms["path"] = c.arms_path;
  if (c.arms_kind == "explicit") arms["arms"] = c.arms;
  nlohmann::json theta = c.theta_star.empty()
                             ? nlohmann::json{{"random_norm", c.theta_norm}}
                             : nlohmann::json{{"vector", c.theta_star}};
  nlohmann::json j = {{"problem", c.problem},
                      {"d", c.d},
                      {"T", c.T},
                      {"arms", arms},
                      {"theta_star", theta},
                      {"policy", c.policy},
                      {"eps", c.eps},
                      {"dist", c.dist},
                      {"link", c.link},
                      {"penalty", {{"kind", c.penalty}, {"weight", c.pen_weight}}},
                      {"noise", c.noise},
                      {"R", c.R},
                      {"S", c.S},
                      {"lambda", c.lambda},
                      {"delta", c.delta},
                      {"master_seed", c.master_seed},
                      {"seeds", c.seeds},
                      {"instance", c.instance},
                      {"det_check", c.det_check},
                      {"out", c.out},
                      {"threads", c.threads}};
  if (!c.seed_list.empty()) j["seed_list"] = c.seed_list;
  if (c.has_sweep) {
    nlohmann::json s = nlohmann::json::object();
    if (!c.sweep_d.empty()) s["d"] = c.sweep_d;
    if (!c.sweep_T.empty()) s["T"] = c.sweep_T;
    if (!c.sweep_dist.empty()) s["dist"] = c.sweep_dist;
    if (!c.sweep_policy.empty()) s["policy"] = c.sweep_policy;
    j["sweep"] = s;
  }
  return j;
}

void ValidateConfig(const ExperimentConfig& c) {
  if (!OneOf(c.problem, {"linear", "glm", "rlo"})) {
    throw InvalidArgument("problem must be linear, glm or rlo");
  }
  if (c.d < 1) throw InvalidArgument("d must be >= 1");
  if (c.T < 0) throw InvalidArgument("T must be >= 0");
  if (!OneOf(c.arms_kind,
             {"unit_ball", "hypercube", "random_finite", "explicit", "file"})) {
    throw InvalidArgument("unknown arms kind '" + c.arms_kind + "'");
  }
  if (c.arms_kind == "random_finite" && c.arms_count < 1) {
    throw InvalidArgument("arms.count must be >= 1");
  }
  if (c.arms_kind == "file" && c.arms_path.empty()) {
    throw InvalidArgument("arms.path is required for file arm sets");
  }
  if (c.arms_kind == "explicit") {
    if (c.arms.empty()) throw InvalidArgument("explicit arm set is empty");
    for (const auto& a : c.arms) {
      double sq = 0.0;
      for (double v : a) sq += v * v;
      if (std::sqrt(sq) > 1.0 + kArmNormSlack) {
        throw InvalidArgument("explicit arm has norm > 1");
      }
    }
  }
  if (!(c.S > 0.0)) throw InvalidArgument("S must be > 0");
  if (!(c.R >= 0.0)) throw InvalidArgument("R must be >= 0");
  if (!(c.lambda > 0.0)) throw InvalidArgument("lambda must be > 0");
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1)");
  }
  if (c.det_check && c.lambda < 1.0) {
    throw InvalidArgument(
        "lambda must be >= 1 when det_check is enabled");
  }
  if (!c.theta_star.empty()) {
    if (static_cast<int>(c.theta_star.size()) != c.d) {
      throw InvalidArgument("theta_star.vector dimension does not match d");
    }
    if (ToVector(c.theta_star).norm() > c.S + 1e-12) {
      throw InvalidArgument("||theta*|| exceeds S");
    }
  } else if (!(c.theta_norm >= 0.0) || c.theta_norm > c.S) {
    throw InvalidArgument("theta_star.random_norm must lie in [0, S]");
  }
  if (!OneOf(c.policy, {"lints", "glmts", "rlots", "greedy", "eps_greedy"})) {
    throw InvalidArgument("unknown policy '" + c.policy + "'");
  }
  if (!(c.eps >= 0.0 && c.eps <= 1.0)) {
    throw InvalidArgument("eps must lie in [0, 1]");
  }
  if (!OneOf(c.dist, {"gaussian", "uniform_ball", "uniform_sphere"})) {
    throw InvalidArgument("unknown dist '" + c.dist + "'");
  }
  if (!OneOf(c.noise, {"gaussian", "uniform", "bernoulli"})) {
    throw InvalidArgument("unknown noise '" + c.noise + "'");
  }
  if (c.problem == "rlo" && c.policy != "rlots") {
    throw InvalidArgument("rlo problems need policy rlots");
  }
  if (c.problem != "rlo" && c.policy == "rlots") {
    throw InvalidArgument("policy rlots needs problem rlo");
  }
  if (c.policy == "glmts" && c.problem != "glm") {
    throw InvalidArgument("policy glmts needs problem glm");
  }
  if (c.problem == "glm" && !OneOf(c.link, {"identity", "logistic"})) {
    throw InvalidArgument("link must be identity or logistic");
  }
  if (c.noise == "bernoulli" && !(c.problem == "glm" && c.link == "logistic")) {
    throw InvalidArgument("bernoulli noise needs a glm problem with logistic link");
  }
  if (c.problem == "rlo" && !OneOf(c.penalty, {"quadratic", "l1box"})) {
    throw InvalidArgument("penalty.kind must be quadratic or l1box");
  }
  if (c.problem == "rlo" && !(c.pen_weight > 0.0)) {
    throw InvalidArgument("penalty.weight must be > 0");
  }
  if (c.seed_list.empty() && c.seeds < 1) {
    throw InvalidArgument("seeds must be >= 1");
  }
  if (!OneOf(c.instance, {"fixed", "per_seed"})) {
    throw InvalidArgument("instance must be fixed or per_seed");
  }
  if (c.threads < 1) throw InvalidArgument("threads must be >= 1");
}

std::vector<std::uint64_t> SeedValues(const ExperimentConfig& c) {
  if (!c.seed_list.empty()) return c.seed_list;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < c.seeds; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
  return seeds;
}

double EffectiveNoiseScale(const ExperimentConfig& c) {
  return c.noise == "bernoulli" ? 0.5 : c.R;
}

Instance BuildInstance(const ExperimentConfig& c, std::uint64_t seed) {
  Rng rng = MakeRng({c.master_seed, kInstanceStream,
                     static_cast<std::uint64_t>(c.d),
                     c.instance == "per_seed" ? seed : kSharedInstance});
  Eigen::VectorXd theta_star = c.theta_star.empty()
                                   ? Eigen::VectorXd(c.theta_norm *
                                                     RandomDirection(c.d, rng))
                                   : ToVector(c.theta_star);

  NoiseSpec noise;
  noise.scale = EffectiveNoiseScale(c);
  if (c.noise == "uniform") noise.kind = NoiseSpec::Kind::kUniform;
  if (c.noise == "bernoulli") noise.kind = NoiseSpec::Kind::kBernoulli;

  const ConfidenceParams params(noise.scale, c.S, c.lambda, c.delta,
                                std::max<std::int64_t>(c.T, 1));
  const TSDistribution dist = TSDistribution::FromName(c.dist, c.d);

  if (c.problem == "rlo") {
    const RloPenalty penalty = c.penalty == "quadratic"
                                   ? RloPenalty::QuadraticNorm(c.pen_weight)
                                   : RloPenalty::L1Box(c.pen_weight);
    return {Environment::Rlo(std::move(theta_star), penalty, noise),
            RloTsSpec{dist, penalty}, params};
  }

  ArmSet set = BuildArms(c, rng);
  PolicySpec policy = GreedySpec{};
  if (c.policy == "eps_greedy") policy = EpsGreedySpec{c.eps};

  if (c.problem == "glm") {
    LinkFunction link = c.link == "identity" ? LinkFunction::Identity()
                                             : LinkFunction::Logistic(c.S);
    if (c.policy == "glmts") policy = GlmTsSpec{dist, link};
    if (c.policy == "lints") policy = LinTsSpec{dist};
    return {Environment::Glm(std::move(theta_star), std::move(set),
                             std::move(link), noise),
            std::move(policy), params};
  }
  if (c.policy == "lints") policy = LinTsSpec{dist};
  return {Environment::Linear(std::move(theta_star), std::move(set), noise),
          std::move(policy), params};
}

TrajectoryRecord RunEpisode(const ExperimentConfig& c, std::uint64_t seed,
                            std::uint64_t cell) {
  Instance inst = BuildInstance(c, seed);
  Episode episode(std::move(inst.env), std::move(inst.policy), inst.params,
                  MakeRng({c.master_seed, cell, seed, kPolicyStream}),
                  MakeRng({c.master_seed, cell, seed, kNoiseStream}));
  for (std::int64_t t = 0; t < c.T; ++t) episode.Step();
  TrajectoryRecord rec = episode.Finish(seed);
  rec.horizon = c.T;
  if (!c.det_check) rec.summary.det.skipped = true;
  return rec;
}

std::vector<TrajectoryRecord> RunSeeds(const ExperimentConfig& c,
                                       std::uint64_t cell, int threads) {
  const std::vector<std::uint64_t> seeds = SeedValues(c);
  std::vector<TrajectoryRecord> records(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        records[i] = RunEpisode(c, seeds[i], cell);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

std::vector<ExperimentConfig> ExpandSweep(const ExperimentConfig& c) {
  if (!c.has_sweep) throw InvalidArgument("config has no sweep section");
  const std::vector<int> ds = c.sweep_d.empty() ? std::vector<int>{c.d}
                                                : c.sweep_d;
  const std::vector<std::int64_t> ts =
      c.sweep_T.empty() ? std::vector<std::int64_t>{c.T} : c.sweep_T;
  const std::vector<std::string> dists =
      c.sweep_dist.empty() ? std::vector<std::string>{c.dist} : c.sweep_dist;
  const std::vector<std::string> policies =
      c.sweep_policy.empty() ? std::vector<std::string>{c.policy}
                             : c.sweep_policy;
  std::vector<ExperimentConfig> cells;
  for (int d : ds) {
    for (std::int64_t t : ts) {
      for (const auto& dist : dists) {
        for (const auto& policy : policies) {
          ExperimentConfig cell = c;
          cell.has_sweep = false;
          cell.sweep_d.clear();
          cell.sweep_T.clear();
          cell.sweep_dist.clear();
          cell.sweep_policy.clear();
          cell.d = d;
          cell.T = t;
          cell.dist = dist;
          cell.policy = policy;
          if (!cell.theta_star.empty() &&
              static_cast<int>(cell.theta_star.size()) != d) {
            throw InvalidArgument(
                "sweeping d requires a random theta_star");
          }
          ValidateConfig(cell);
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  if (cells.empty()) throw InvalidArgument("sweep grid is empty");
  return cells;
}

}  // namespace tslab
