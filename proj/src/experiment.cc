// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynsel/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <thread>
#include <utility>

#include "dynsel/adversaries.h"
#include "dynsel/batched.h"
#include "dynsel/constraints.h"
#include "dynsel/errors.h"
#include "dynsel/instance_io.h"
#include "dynsel/lp.h"
#include "dynsel/matching_instance.h"
#include "dynsel/ocrs.h"
#include "dynsel/projection.h"
#include "dynsel/random.h"
#include "dynsel/regret.h"
#include "dynsel/stats.h"
#include "dynsel/temporal.h"

namespace dynsel {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Fixed formatting keeps reruns byte-identical.
std::string Fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// JSON-safe number: NaN becomes null.
OrderedJson Num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string SetString(const ElementSet& set) {
  std::string out;
  for (size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(set[i]);
  }
  return out;
}

std::string ResolvePath(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

template <typename T>
T Param(const Json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("parameter '") + key + "': " + e.what());
  }
}

Instance InstanceParam(const Json& params, const std::string& base_dir) {
  if (!params.contains("instance")) {
    throw ConfigError("config needs an 'instance' (path or object)");
  }
  const Json& value = params.at("instance");
  if (value.is_string()) {
    return LoadInstance(ResolvePath(base_dir, value.get<std::string>()));
  }
  return InstanceFromJson(value);
}

MatchingInstance MatchingParam(const Json& params,
                               const std::string& base_dir) {
  if (!params.contains("instance")) {
    throw ConfigError("config needs an 'instance' (path or object)");
  }
  const Json& value = params.at("instance");
  if (value.is_string()) {
    return LoadMatchingInstance(
        ResolvePath(base_dir, value.get<std::string>()));
  }
  return MatchingInstanceFromJson(value);
}

// Uniform point scaled until the tightest row of b * P^d is tight.
FractionalPoint SaturatingPoint(const ConstraintFamily& family,
                                const InstanceSequence& seq, double b) {
  std::vector<double> x(seq.size(), 1.0);
  ShrinkIntoPolytope(TemporalPolytopeConstraints(family, seq, b), x);
  return FractionalPoint(std::move(x), b);
}

FractionalPoint PointParam(const Json& params, const ConstraintFamily& family,
                           const InstanceSequence& seq, double b) {
  if (params.contains("x") && params.at("x").is_array()) {
    FractionalPoint x;
    try {
      x = FractionalPoint(params.at("x").get<std::vector<double>>(), b);
    } catch (const InputError& e) {
      throw ConfigError(std::string("invalid x: ") + e.what());
    }
    if (x.size() != seq.size()) throw ConfigError("x has the wrong length");
    return x;
  }
  const std::string mode = Param<std::string>(params, "x", "saturate");
  if (mode == "saturate") return SaturatingPoint(family, seq, b);
  if (mode == "lp") {
    const std::vector<double> w = seq.weights();
    return SolveFractional(family, seq, w, b).x;
  }
  throw ConfigError("unknown x mode '" + mode + "'");
}

double DefaultScale(const ConstraintFamily& family) {
  return family.kind() == FamilyKind::kMatching ? 0.5 : 1.0;
}

struct SeedResult {
  std::string rows;
  std::vector<double> values;
};

class Experiment {
 public:
  virtual ~Experiment() = default;
  virtual std::string Header() const = 0;
  virtual SeedResult Run(uint64_t seed) const = 0;
  virtual OrderedJson Summarize(
      const std::vector<SeedResult>& results) const = 0;
};

// Column c of the per-seed value vectors.
RunningStat Column(const std::vector<SeedResult>& results, size_t c) {
  RunningStat stat;
  for (const SeedResult& r : results) stat.Add(r.values.at(c));
  return stat;
}

// ---------------------------------------------------------------------------

class SelectabilityExperiment : public Experiment {
 public:
  SelectabilityExperiment(const Json& params, const std::string& base_dir)
      : instance_(InstanceParam(params, base_dir)) {
    b_ = Param<double>(params, "b", DefaultScale(instance_.family));
    try {
      constants_ = MakeOcrs(instance_.family, b_)->constants();
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    std::vector<Json> panel;
    if (params.contains("panel")) {
      for (const auto& entry : params.at("panel")) panel.push_back(entry);
    }
    if (panel.empty()) panel.push_back(Json::object());
    for (size_t i = 0; i < panel.size(); ++i) {
      const Json& entry = panel[i];
      InstanceSequence seq = instance_.seq;
      try {
        if (entry.contains("activities")) {
          std::vector<Activity> d;
          for (const auto& v : entry.at("activities")) {
            d.push_back(Activity::FromEncoded(v.get<int64_t>()));
          }
          seq = seq.WithActivities(d);
        }
        if (entry.contains("order")) {
          seq = seq.WithArrivalOrder(entry.at("order").get<std::vector<int>>());
        }
      } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed panel entry: ") + e.what());
      } catch (const InputError& e) {
        throw ConfigError(std::string("invalid panel entry: ") + e.what());
      }
      Config config;
      config.label = entry.value("label", "config" + std::to_string(i));
      config.x = PointParam(entry.contains("x") ? entry : params,
                            instance_.family, seq, b_);
      config.seq = std::move(seq);
      configs_.push_back(std::move(config));
    }
  }

  std::string Header() const override {
    return "seed,config,selected,selectable\n";
  }

  SeedResult Run(uint64_t seed) const override {
    SeedResult out;
    const int m = instance_.seq.size();
    RunOptions options;
    options.track_selectability = true;
    for (const Config& config : configs_) {
      auto ocrs = MakeOcrs(instance_.family, b_);
      RunResult run = RunTemporal(*ocrs, config.x, config.seq, seed, options);
      std::string flags(m, '0');
      for (const TranscriptEntry& entry : run.transcript.entries) {
        if (*entry.selectable) flags[entry.id] = '1';
      }
      for (int e = 0; e < m; ++e) out.values.push_back(flags[e] == '1');
      out.rows += std::to_string(seed) + "," + config.label + "," +
                  SetString(run.selected) + "," + flags + "\n";
    }
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    const int m = instance_.seq.size();
    OrderedJson configs = OrderedJson::array();
    double min_estimate = 1.0;
    bool pass = true;
    for (size_t i = 0; i < configs_.size(); ++i) {
      OrderedJson elements = OrderedJson::array();
      for (int e = 0; e < m; ++e) {
        const RunningStat stat = Column(results, i * m + e);
        const double se = BinomialStdError(stat.mean(), stat.count());
        min_estimate = std::min(min_estimate, stat.mean());
        if (stat.mean() < constants_.c - 3.0 * se) pass = false;
        elements.push_back(
            {{"id", e}, {"selectability", stat.mean()}, {"stderr", se}});
      }
      configs.push_back({{"label", configs_[i].label},
                         {"x", configs_[i].x.values()},
                         {"elements", elements}});
    }
    OrderedJson out;
    out["scheme"] = std::string(instance_.family.name());
    out["b"] = b_;
    out["min_selectability"] = min_estimate;
    out["target"] = constants_.c;
    out["pass"] = pass;
    out["configs"] = configs;
    return out;
  }

 private:
  struct Config {
    std::string label;
    InstanceSequence seq;
    FractionalPoint x;
  };

  Instance instance_;
  double b_ = 1.0;
  SchemeConstants constants_;
  std::vector<Config> configs_;
};

// ---------------------------------------------------------------------------

class TemporalReductionExperiment : public Experiment {
 public:
  TemporalReductionExperiment(const Json& params, const std::string& base_dir)
      : instance_(InstanceParam(params, base_dir)) {
    b_ = Param<double>(params, "b", DefaultScale(instance_.family));
    try {
      MakeOcrs(instance_.family, b_);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    x_ = PointParam(params, instance_.family, instance_.seq, b_);
    infinite_ = instance_.seq.WithActivities(
        std::vector<Activity>(instance_.seq.size(), Activity::Infinite()));
    x_infinite_ = SaturatingPoint(instance_.family, infinite_, b_);
  }

  std::string Header() const override {
    return "seed,selected,weight,temporally_feasible,wrapper_infinite,"
           "direct_infinite,equal\n";
  }

  SeedResult Run(uint64_t seed) const override {
    auto ocrs = MakeOcrs(instance_.family, b_);
    RunOptions options;
    options.verify_output = false;  // counted below instead
    const RunResult run = RunTemporal(*ocrs, x_, instance_.seq, seed, options);
    const bool feasible =
        IsTemporallyFeasible(run.selected, instance_.seq, instance_.family);
    if (!feasible) {
      throw InvariantViolation("temporal OCRS output is infeasible at seed " +
                               std::to_string(seed));
    }
    const RunResult wrapped = RunTemporal(*ocrs, x_infinite_, infinite_, seed);
    const RunResult direct = RunDirect(*ocrs, x_infinite_, infinite_, seed);
    const bool equal = wrapped.selected == direct.selected;
    double weight = 0.0;
    for (int e : run.selected) weight += instance_.seq.element(e).weight;
    SeedResult out;
    out.values = {feasible ? 1.0 : 0.0, equal ? 1.0 : 0.0, weight};
    out.rows = std::to_string(seed) + "," + SetString(run.selected) + "," +
               Fmt(weight) + "," + (feasible ? "1" : "0") + "," +
               SetString(wrapped.selected) + "," + SetString(direct.selected) +
               "," + (equal ? "1" : "0") + "\n";
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    const RunningStat feasible = Column(results, 0);
    const RunningStat equal = Column(results, 1);
    const RunningStat weight = Column(results, 2);
    const int64_t n = feasible.count();
    const int64_t infeasible = n - std::llround(feasible.mean() * n);
    const int64_t mismatches = n - std::llround(equal.mean() * n);
    OrderedJson out;
    out["runs"] = n;
    out["infeasible_outputs"] = infeasible;
    out["infinite_activity_mismatches"] = mismatches;
    out["mean_selected_weight"] = weight.mean();
    out["mean_selected_weight_stderr"] = weight.StdError();
    out["target_infeasible_outputs"] = 0;
    out["pass"] = infeasible == 0 && mismatches == 0;
    return out;
  }

 private:
  Instance instance_;
  double b_ = 1.0;
  FractionalPoint x_;
  InstanceSequence infinite_;
  FractionalPoint x_infinite_;
};

// ---------------------------------------------------------------------------

class MatchingExperiment : public Experiment {
 public:
  MatchingExperiment(const Json& params, const std::string& base_dir)
      : instance_(MatchingParam(params, base_dir)),
        alpha_(Param<double>(params, "alpha", 0.5)),
        lp_(SolveMatchingLp(instance_)),
        table_(ComputeAvailability(instance_, lp_.x.values(), alpha_)) {}

  std::string Header() const override { return "seed,reward,lp_value,ratio\n"; }

  SeedResult Run(uint64_t seed) const override {
    const MatchingRun run =
        RunBatchedMatching(instance_, lp_.x.values(), table_, alpha_, seed);
    if (!IsFeasibleMatching(instance_, run)) {
      throw InvariantViolation("machine reused while busy at seed " +
                               std::to_string(seed));
    }
    SeedResult out;
    out.values = {run.reward};
    const double ratio = lp_.objective > 0.0 ? run.reward / lp_.objective : 0.0;
    out.rows = std::to_string(seed) + "," + Fmt(run.reward) + "," +
               Fmt(lp_.objective) + "," + Fmt(ratio) + "\n";
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    const RunningStat reward = Column(results, 0);
    const double lp = lp_.objective;
    const double ratio = lp > 0.0 ? reward.mean() / lp : 1.0;
    const double ratio_se = lp > 0.0 ? reward.StdError() / lp : 0.0;
    OrderedJson out;
    out["lp_value"] = lp;
    out["mean_reward"] = reward.mean();
    out["mean_reward_stderr"] = reward.StdError();
    out["ratio"] = ratio;
    out["ratio_stderr"] = ratio_se;
    out["alpha"] = alpha_;
    out["target"] = 0.5;
    out["availability_min"] = table_.Min();
    out["availability_target"] = 0.5;
    out["pass"] = ratio >= 0.5 - 3.0 * ratio_se &&
                  table_.Min() >= alpha_ - kPolytopeTolerance;
    return out;
  }

 private:
  MatchingInstance instance_;
  double alpha_;
  LpSolution lp_;
  AvailabilityTable table_;
};

// ---------------------------------------------------------------------------

enum class RegretVariant { kFull, kOsmd, kBlocked };

class RegretExperiment : public Experiment {
 public:
  // Per-horizon values.
  enum Value {
    kAlphaRegret,
    kFractionalRegret,
    kReward,
    kFractionalReward,
    kBestFixed,
    kDynamicOpt,
    kUnobserved,
    kBoundGap,
    kNumValues
  };

  RegretExperiment(RegretVariant variant, const Json& params,
                   const std::string& base_dir)
      : variant_(variant) {
    const Instance instance = InstanceParam(params, base_dir);
    problem_.family = instance.family;
    problem_.seq = instance.seq;
    b_ = Param<double>(params, "b", 1.0);
    try {
      constants_ = MakeOcrs(problem_.family, b_)->constants();
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    // Playing inside b P^d costs a factor b against the best feasible set.
    alpha_ = Param<double>(params, "alpha", b_ * constants_.c);
    if (params.contains("horizons")) {
      horizons_ = Param<std::vector<int>>(params, "horizons", {});
    } else {
      horizons_ = {Param<int>(params, "T", 1024)};
    }
    if (horizons_.empty()) throw ConfigError("need at least one horizon");
    for (int t : horizons_) {
      if (t <= 0) throw ConfigError("horizons must be positive");
      if (variant_ == RegretVariant::kBlocked) {
        MakeBlockSchedule(t, problem_.seq.size());
      }
    }
    checkpoints_ = Param<int>(params, "checkpoints", 16);
    step_scale_ = Param<double>(params, "step_scale", 1.0);
    const std::string play = Param<std::string>(params, "play", "ocrs");
    if (play == "fractional") {
      play_ = PlayMode::kFractional;
    } else if (play != "ocrs") {
      throw ConfigError("unknown play mode '" + play + "'");
    }
    const std::string explore =
        Param<std::string>(params, "exploration", "ocrs");
    if (explore == "direct") {
      exploration_ = ExplorationMode::kDirect;
    } else if (explore != "ocrs") {
      throw ConfigError("unknown exploration mode '" + explore + "'");
    }
    adversary_ = AdversarySpecFromJson(
        params.contains("adversary") ? params.at("adversary") : Json::object());
    if (adversary_.m == 0) adversary_.m = problem_.seq.size();
    if (adversary_.kind == AdversaryKind::kCustomFile) {
      adversary_.path = ResolvePath(base_dir, adversary_.path);
    }
    // Validate once up front.
    MakeAdversary(adversary_);
  }

  std::string Header() const override {
    return "seed,T,t,cumulative_reward,best_fixed_prefix,alpha_regret,"
           "fractional_regret\n";
  }

  SeedResult Run(uint64_t seed) const override {
    SeedResult out;
    AdversarySpec spec = adversary_;
    spec.seed = DeriveSeed(seed, Stream::kAdversary, 0);
    const auto adversary = MakeAdversary(spec);
    const LinearConstraints decision_set =
        TemporalPolytopeConstraints(problem_.family, problem_.seq, b_);
    for (int horizon : horizons_) {
      auto ocrs = MakeOcrs(problem_.family, b_);
      RegretTrace trace;
      switch (variant_) {
        case RegretVariant::kFull: {
          OgdMinimizer rm(decision_set, step_scale_);
          trace = RunFullFeedback(problem_, *ocrs, rm, *adversary, horizon,
                                  seed, play_);
          break;
        }
        case RegretVariant::kOsmd:
          trace = RunOsmdSemiBandit(problem_, *ocrs, *adversary, horizon, seed);
          break;
        case RegretVariant::kBlocked: {
          OgdMinimizer rm(decision_set, step_scale_);
          trace = RunBlockedSemiBandit(problem_, *ocrs, rm, *adversary, horizon,
                                       seed, exploration_);
          break;
        }
      }
      const int stride = std::max(1, horizon / std::max(1, checkpoints_));
      const Benchmarks bench =
          ComputeBenchmarks(trace, problem_, *adversary, alpha_, stride, b_);
      for (size_t i = 0; i < bench.alpha_regret_stage.size(); ++i) {
        out.rows += std::to_string(seed) + "," + std::to_string(horizon) + "," +
                    std::to_string(bench.alpha_regret_stage[i]) + "," +
                    Fmt(bench.cumulative_reward[i]) + "," +
                    Fmt(bench.best_fixed_prefix[i]) + "," +
                    Fmt(bench.alpha_regret[i]) + "," +
                    Fmt(bench.fractional_regret[i]) + "\n";
      }
      std::vector<double> values(kNumValues);
      values[kAlphaRegret] = bench.alpha_regret.back();
      values[kFractionalRegret] = bench.fractional_regret.back();
      values[kReward] = trace.TotalReward();
      values[kFractionalReward] = trace.TotalFractionalReward();
      values[kBestFixed] = bench.best_fixed;
      values[kDynamicOpt] = bench.dynamic_opt;
      values[kUnobserved] = trace.unobserved_explorations;
      // A c-selectable scheme earns at least c times the fractional reward
      // in expectation, so this is <= 0 on average.
      values[kBoundGap] = bench.alpha_regret.back() -
                          constants_.c * bench.fractional_regret.back() -
                          (alpha_ - b_ * constants_.c) * bench.best_fixed;
      out.values.insert(out.values.end(), values.begin(), values.end());
    }
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    OrderedJson per_horizon = OrderedJson::array();
    std::vector<double> xs, frac, alpha_reg;
    bool alpha_within_bound = true;
    for (size_t h = 0; h < horizons_.size(); ++h) {
      const size_t base = h * kNumValues;
      const RunningStat ar = Column(results, base + kAlphaRegret);
      const RunningStat fr = Column(results, base + kFractionalRegret);
      const RunningStat rw = Column(results, base + kReward);
      const RunningStat bf = Column(results, base + kBestFixed);
      const RunningStat dyn = Column(results, base + kDynamicOpt);
      const RunningStat unobs = Column(results, base + kUnobserved);
      const RunningStat gap = Column(results, base + kBoundGap);
      const bool within = gap.mean() <= 3.0 * gap.StdError();
      alpha_within_bound = alpha_within_bound && within;
      per_horizon.push_back({{"T", horizons_[h]},
                             {"alpha_regret", ar.mean()},
                             {"alpha_regret_stderr", ar.StdError()},
                             {"fractional_regret", fr.mean()},
                             {"fractional_regret_stderr", fr.StdError()},
                             {"reward", rw.mean()},
                             {"best_fixed", bf.mean()},
                             {"dynamic_opt", Num(dyn.mean())},
                             {"unobserved_explorations", unobs.mean()},
                             {"alpha_regret_within_fractional_bound", within}});
      xs.push_back(horizons_[h]);
      frac.push_back(fr.mean());
      alpha_reg.push_back(ar.mean());
    }
    OrderedJson out;
    out["variant"] = variant_ == RegretVariant::kFull   ? "full"
                     : variant_ == RegretVariant::kOsmd ? "osmd"
                                                        : "blocked";
    out["alpha"] = alpha_;
    const double target = variant_ == RegretVariant::kBlocked ? 2.0 / 3.0 : 0.5;
    const double bound = variant_ == RegretVariant::kBlocked ? 0.75 : 0.6;
    out["target_slope"] = target;
    out["slope_bound"] = bound;
    OrderedJson slope = nullptr;
    OrderedJson alpha_slope = nullptr;
    if (xs.size() >= 2) {
      const bool frac_positive =
          std::all_of(frac.begin(), frac.end(), [](double v) { return v > 0; });
      if (frac_positive) slope = FitLogLog(xs, frac).slope;
      const bool alpha_positive = std::all_of(
          alpha_reg.begin(), alpha_reg.end(), [](double v) { return v > 0; });
      if (alpha_positive) alpha_slope = FitLogLog(xs, alpha_reg).slope;
    }
    out["fractional_regret_slope"] = slope;
    out["alpha_regret_slope"] = alpha_slope;
    out["alpha_regret_within_fractional_bound"] = alpha_within_bound;
    out["pass"] =
        !slope.is_null() && slope.get<double>() <= bound && alpha_within_bound;
    out["horizons"] = per_horizon;
    return out;
  }

 private:
  RegretVariant variant_;
  RegretProblem problem_;
  double b_ = 1.0;
  SchemeConstants constants_;
  double alpha_ = 0.0;
  std::vector<int> horizons_;
  int checkpoints_ = 16;
  double step_scale_ = 1.0;
  PlayMode play_ = PlayMode::kOcrs;
  ExplorationMode exploration_ = ExplorationMode::kThroughOcrs;
  AdversarySpec adversary_;
};

// ---------------------------------------------------------------------------

// Best value over temporally feasible sets that contain (or avoid) the first
// arriving element.
double BestCompletion(const ConstraintFamily& family,
                      const InstanceSequence& seq, std::span<const double> w,
                      bool take_first) {
  const int first = seq.order()[0];
  double best = 0.0;
  for (const ElementSet& set : TemporallyFeasibleSets(family, seq)) {
    const bool has = std::binary_search(set.begin(), set.end(), first);
    if (has != take_first) continue;
    double v = 0.0;
    for (int e : set) v += w[e];
    best = std::max(best, v);
  }
  return best;
}

class LowerBoundC1Experiment : public Experiment {
 public:
  LowerBoundC1Experiment(const Json& params, const std::string& /*base_dir*/)
      : eps_(Param<double>(params, "eps", 0.1)),
        horizon_(Param<int>(params, "T", 10000)),
        policies_(
            Param<std::vector<double>>(params, "policies", {0.0, 0.5, 1.0})),
        checkpoints_(Param<std::vector<int>>(
            params, "checkpoints", {100, 200, 500, 1000, 2000, 5000, 10000})) {
    LemmaC1Adversary(eps_, 0);  // validates eps
    if (horizon_ <= 0) throw ConfigError("T must be positive");
    std::erase_if(checkpoints_,
                  [this](int c) { return c <= 0 || c > horizon_; });
    if (checkpoints_.size() < 2) {
      throw ConfigError("need at least two checkpoints within T");
    }
    std::sort(checkpoints_.begin(), checkpoints_.end());
    for (double p : policies_) {
      if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError("policies must be in [0,1]");
    }
  }

  std::string Header() const override {
    return "seed,policy,t,alg_cumulative,dynamic_cumulative,regret\n";
  }

  SeedResult Run(uint64_t seed) const override {
    const LemmaC1Adversary adversary(eps_,
                                     DeriveSeed(seed, Stream::kAdversary, 0));
    const ConstraintFamily family = ConstraintFamily::Rank1(3);
    // Completion values depend only on the stage tag.
    std::map<std::string, std::array<double, 3>> cache;
    const size_t np = policies_.size();
    std::vector<double> alg(np, 0.0);
    double dyn = 0.0;
    SeedResult out;
    std::vector<std::vector<double>> regret_at(np);
    size_t next_checkpoint = 0;
    for (int t = 0; t < horizon_; ++t) {
      const Stage stage = adversary.At(t);
      auto it = cache.find(stage.tag);
      if (it == cache.end()) {
        const InstanceSequence seq = StageSequence(stage, Activity::Infinite());
        const double with = BestCompletion(family, seq, stage.weights, true);
        const double without =
            BestCompletion(family, seq, stage.weights, false);
        it = cache
                 .emplace(stage.tag,
                          std::array<double, 3>{with, without,
                                                std::max(with, without)})
                 .first;
      }
      const auto& v = it->second;
      dyn += v[2];
      for (size_t i = 0; i < np; ++i) {
        const bool take =
            KeyedUniform(seed, Stream::kPolicy, static_cast<uint64_t>(t), i) <
            policies_[i];
        alg[i] += take ? v[0] : v[1];
      }
      if (next_checkpoint < checkpoints_.size() &&
          t + 1 == checkpoints_[next_checkpoint]) {
        for (size_t i = 0; i < np; ++i) {
          regret_at[i].push_back(dyn - alg[i]);
          out.rows += std::to_string(seed) + "," + Fmt(policies_[i]) + "," +
                      std::to_string(t + 1) + "," + Fmt(alg[i]) + "," +
                      Fmt(dyn) + "," + Fmt(dyn - alg[i]) + "\n";
        }
        ++next_checkpoint;
      }
    }
    // values: dynamic optimum per stage, then per policy the regret at each
    // checkpoint.
    out.values.push_back(dyn / horizon_);
    for (size_t i = 0; i < np; ++i) {
      out.values.insert(out.values.end(), regret_at[i].begin(),
                        regret_at[i].end());
    }
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    const RunningStat dyn = Column(results, 0);
    const size_t nc = checkpoints_.size();
    std::vector<double> xs(checkpoints_.begin(), checkpoints_.end());
    const double lower = (1.0 - eps_) / 2.0;
    OrderedJson policies = OrderedJson::array();
    bool slope_pass = true;
    for (size_t i = 0; i < policies_.size(); ++i) {
      std::vector<double> means(nc);
      RunningStat slopes;
      for (const SeedResult& r : results) {
        std::vector<double> ys(r.values.begin() + 1 + i * nc,
                               r.values.begin() + 1 + (i + 1) * nc);
        slopes.Add(FitLine(xs, ys).slope);
      }
      for (size_t c = 0; c < nc; ++c)
        means[c] = Column(results, 1 + i * nc + c).mean();
      const double slope = FitLine(xs, means).slope;
      const bool ok = slope >= lower - 3.0 * slopes.StdError();
      slope_pass = slope_pass && ok;
      policies.push_back(
          {{"p", policies_[i]},
           {"regret_slope", slope},
           {"regret_slope_stderr", slopes.StdError()},
           {"predicted_slope", (1.0 - eps_ * policies_[i]) / 2.0},
           {"final_regret", means.back()},
           {"slope_at_least_lower_bound", ok}});
    }
    OrderedJson out;
    out["eps"] = eps_;
    out["T"] = horizon_;
    out["dynamic_opt_per_stage"] = dyn.mean();
    out["dynamic_opt_per_stage_stderr"] = dyn.StdError();
    out["dynamic_opt_target"] = 1.5;
    out["slope_lower_bound"] = lower;
    out["policies"] = policies;
    out["pass"] = slope_pass && std::fabs(dyn.mean() - 1.5) <= 0.01;
    return out;
  }

 private:
  double eps_;
  int horizon_;
  std::vector<double> policies_;
  std::vector<int> checkpoints_;
};

// ---------------------------------------------------------------------------

class LowerBoundC2Experiment : public Experiment {
 public:
  LowerBoundC2Experiment(const Json& params, const std::string& /*base_dir*/)
      : n_(Param<int>(params, "n", 4)),
        alpha_(Param<double>(params, "alpha", std::exp(-1.0))),
        horizon_(Param<int>(params, "T", 10000)),
        guess_(Param<int>(params, "guess", 1)) {
    try {
      delta_ = LemmaC2Delta(n_, alpha_);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    if (horizon_ <= 0) throw ConfigError("T must be positive");
    if (guess_ < 1 || guess_ > n_)
      throw ConfigError("guess must lie in [1, n]");
  }

  std::string Header() const override {
    return "seed,T,ocrs_reward,alg_reward,gap\n";
  }

  SeedResult Run(uint64_t seed) const override {
    const LemmaC2Adversary adversary(n_, alpha_,
                                     DeriveSeed(seed, Stream::kAdversary, 0));
    Rank1Ocrs ocrs(n_);
    RunOptions options;
    options.check_precondition = false;  // x comes from the LP below
    double ocrs_total = 0.0;
    double alg_total = 0.0;
    for (int t = 0; t < horizon_; ++t) {
      const Stage stage = adversary.At(t);
      const InstanceSequence seq = StageSequence(stage, Activity::Infinite());
      // The informed scheme knows the stage and rounds its LP optimum.
      const LpSolution lp =
          SolveFractional(ocrs.family(), seq, stage.weights, 1.0);
      const RunResult run =
          RunTemporal(ocrs, lp.x, seq, StageSeed(seed, t), options);
      for (int e : run.selected) ocrs_total += stage.weights[e];
      // The uninformed policy commits to a fixed arrival position.
      alg_total += stage.weights[guess_ - 1];
    }
    SeedResult out;
    const double per_ocrs = ocrs_total / horizon_;
    const double per_alg = alg_total / horizon_;
    out.values = {per_ocrs, per_alg, per_ocrs - per_alg};
    out.rows = std::to_string(seed) + "," + std::to_string(horizon_) + "," +
               Fmt(ocrs_total) + "," + Fmt(alg_total) + "," +
               Fmt(ocrs_total - alg_total) + "\n";
    return out;
  }

  OrderedJson Summarize(const std::vector<SeedResult>& results) const override {
    const RunningStat ocrs = Column(results, 0);
    const RunningStat alg = Column(results, 1);
    const RunningStat gap = Column(results, 2);
    const double gap_bound = delta_ * delta_;
    OrderedJson out;
    out["n"] = n_;
    out["alpha"] = alpha_;
    out["delta"] = delta_;
    out["T"] = horizon_;
    out["ocrs_per_stage"] = ocrs.mean();
    out["ocrs_per_stage_stderr"] = ocrs.StdError();
    out["ocrs_lower_bound"] = alpha_ * delta_;
    out["alg_per_stage"] = alg.mean();
    out["alg_per_stage_stderr"] = alg.StdError();
    out["alg_upper_bound"] = (delta_ + (n_ - 1) * delta_ * delta_) / n_;
    out["gap_per_stage"] = gap.mean();
    out["gap_per_stage_stderr"] = gap.StdError();
    out["gap_per_interval"] = gap.mean() * n_;
    out["gap_lower_bound_per_stage"] = gap_bound;
    out["pass"] = gap.mean() >= gap_bound - 3.0 * gap.StdError();
    return out;
  }

 private:
  int n_;
  double alpha_;
  int horizon_;
  int guess_;
  double delta_ = 0.0;
};

// ---------------------------------------------------------------------------

std::unique_ptr<Experiment> MakeExperiment(const ExperimentConfig& config) {
  const Json& p = config.params;
  const std::string& dir = config.base_dir;
  try {
    if (config.experiment == "selectability") {
      return std::make_unique<SelectabilityExperiment>(p, dir);
    }
    if (config.experiment == "temporal-reduction") {
      return std::make_unique<TemporalReductionExperiment>(p, dir);
    }
    if (config.experiment == "matching-appendix-b") {
      return std::make_unique<MatchingExperiment>(p, dir);
    }
    if (config.experiment == "regret-full") {
      return std::make_unique<RegretExperiment>(RegretVariant::kFull, p, dir);
    }
    if (config.experiment == "regret-osmd") {
      return std::make_unique<RegretExperiment>(RegretVariant::kOsmd, p, dir);
    }
    if (config.experiment == "regret-blocked") {
      return std::make_unique<RegretExperiment>(RegretVariant::kBlocked, p,
                                                dir);
    }
    if (config.experiment == "lowerbound-c1") {
      return std::make_unique<LowerBoundC1Experiment>(p, dir);
    }
    if (config.experiment == "lowerbound-c2") {
      return std::make_unique<LowerBoundC2Experiment>(p, dir);
    }
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown experiment '" + config.experiment + "'");
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j,
                                       const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig config;
  config.base_dir = base_dir;
  config.params = j;
  try {
    config.experiment = j.at("experiment").get<std::string>();
    const uint64_t offset = j.value("seed_offset", uint64_t{0});
    const Json seeds = j.value("seeds", Json(1000));
    if (seeds.is_array()) {
      for (const auto& s : seeds)
        config.seeds.push_back(s.get<uint64_t>() + offset);
    } else {
      const int64_t count = seeds.get<int64_t>();
      if (count <= 0) throw ConfigError("seed count must be positive");
      for (int64_t i = 0; i < count; ++i) config.seeds.push_back(offset + i);
    }
    config.workers = j.value("workers", 0);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (config.seeds.empty()) throw ConfigError("seed list must be nonempty");
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  const Json j = ReadJsonFile(path);
  const std::string dir =
      std::filesystem::absolute(path).parent_path().string();
  return ParseExperimentConfig(j, dir);
}

void OverrideSeeds(ExperimentConfig& config, std::optional<int> count,
                   std::optional<uint64_t> offset) {
  if (!count && !offset) return;
  const uint64_t old_offset = config.params.value("seed_offset", uint64_t{0});
  if (count) {
    if (*count <= 0) throw ConfigError("seed count must be positive");
    const uint64_t start = offset ? *offset : old_offset;
    config.seeds.clear();
    for (int i = 0; i < *count; ++i) config.seeds.push_back(start + i);
    return;
  }
  for (uint64_t& s : config.seeds) s = s - old_offset + *offset;
}

ExperimentOutput RunExperiment(const ExperimentConfig& config) {
  const std::unique_ptr<Experiment> experiment = MakeExperiment(config);
  const size_t n = config.seeds.size();
  std::vector<SeedResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  // Fault injection for exercising the partial-output path.
  std::optional<uint64_t> fail_seed;
  if (config.params.contains("debug_fail_seed")) {
    fail_seed = Param<uint64_t>(config.params, "debug_fail_seed", 0);
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        if (fail_seed == config.seeds[i]) {
          throw InvariantViolation("injected failure at seed " +
                                   std::to_string(config.seeds[i]));
        }
        results[i] = experiment->Run(config.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<size_t>(n, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ExperimentOutput out;
  out.csv = experiment->Header();
  size_t completed = 0;
  for (; completed < n; ++completed) {
    if (errors[completed]) break;
    out.csv += results[completed].rows;
  }
  OrderedJson summary;
  summary["experiment"] = config.experiment;
  summary["seeds"] = n;
  summary["first_seed"] = config.seeds.front();
  if (completed < n) {
    try {
      std::rethrow_exception(errors[completed]);
    } catch (const InvariantViolation& e) {
      out.failed = true;
      out.error = e.what();
    } catch (const ConfigError&) {
      throw;
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    } catch (const std::exception& e) {
      out.failed = true;
      out.error = e.what();
    }
    summary["completed_seeds"] = completed;
    summary["error"] = out.error;
    out.summary = summary;
    return out;
  }
  const OrderedJson body = experiment->Summarize(results);
  for (auto it = body.begin(); it != body.end(); ++it) {
    summary[it.key()] = it.value();
  }
  out.summary = summary;
  return out;
}

void WriteExperimentOutput(const ExperimentOutput& output,
                           const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create '" + out_dir + "': " + ec.message());
  const auto dir = std::filesystem::path(out_dir);
  {
    std::ofstream csv(dir / "runs.csv", std::ios::binary);
    if (!csv) throw ConfigError("cannot write runs.csv in '" + out_dir + "'");
    csv << output.csv;
  }
  std::ofstream summary(dir / "summary.json", std::ios::binary);
  if (!summary)
    throw ConfigError("cannot write summary.json in '" + out_dir + "'");
  summary << output.summary.dump(2) << "\n";
}

std::string AuditTranscript(const ExperimentConfig& config, uint64_t seed) {
  try {
    const Instance instance = InstanceParam(config.params, config.base_dir);
    const double b =
        Param<double>(config.params, "b", DefaultScale(instance.family));
    auto ocrs = MakeOcrs(instance.family, b);
    const FractionalPoint x =
        PointParam(config.params, instance.family, instance.seq, b);
    RunOptions options;
    options.track_selectability = true;
    const RunResult run = RunTemporal(*ocrs, x, instance.seq, seed, options);
    return TranscriptToJsonLines(run.transcript);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> ExperimentNames() {
  return {"selectability", "temporal-reduction", "matching-appendix-b",
          "regret-full",   "regret-osmd",        "regret-blocked",
          "lowerbound-c1", "lowerbound-c2"};
}

std::string CsvSchema() {
  return R"(runs.csv columns by experiment. Sets are ';'-separated element ids;
bit strings are indexed by element id.

selectability
  seed         run seed
  config       panel entry label (arrival order x activity vector)
  selected     elements accepted by the temporal OCRS
  selectable   1 if the element stayed selectable given the sampled prefix

temporal-reduction
  seed                 run seed
  selected             output of the temporal OCRS on the instance
  weight               total weight of `selected`
  temporally_feasible  1 if `selected` passes the temporal feasibility check
  wrapper_infinite     wrapper output with every activity set to infinity
  direct_infinite      base scheme output on the same input and seed
  equal                1 if the two previous columns agree

matching-appendix-b
  seed      run seed
  reward    realized reward of the matching
  lp_value  optimum of the ex-ante LP
  ratio     reward / lp_value

regret-full, regret-osmd, regret-blocked
  seed               run seed (the adversary stream is derived from it)
  T                  horizon of this run
  t                  checkpoint stage (1-based)
  cumulative_reward  sum of realized rewards up to t
  best_fixed_prefix  best fixed feasible set on stages 1..t
  alpha_regret       alpha * best_fixed_prefix - cumulative_reward
  fractional_regret  b * max over P^d of the prefix reward, minus the sum of
                     <x_s, w_s> up to t

lowerbound-c1
  seed                run seed
  policy              probability of accepting the first job
  t                   checkpoint stage
  alg_cumulative      policy reward up to t
  dynamic_cumulative  dynamic optimum up to t
  regret              dynamic_cumulative - alg_cumulative

lowerbound-c2
  seed         run seed
  T            number of stages
  ocrs_reward  total reward of the informed greedy OCRS
  alg_reward   total reward of the uninformed position guess
  gap          ocrs_reward - alg_reward
)";
}

}  // namespace dynsel
