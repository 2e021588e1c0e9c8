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

// Experiment driver.
//
//   dynsel <experiment> --config cfg.json [--out dir] [--seeds n]
//                       [--seed-offset k] [--workers w]
//   dynsel run --config cfg.json ...      (experiment named in the config)
//   dynsel transcript --config cfg.json [--seed s]
//   dynsel schema | dynsel --schema
//
// Exit codes: 0 success, 1 other failure, 2 invalid config or input,
// 3 invariant violation (runs.csv keeps the rows completed so far).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dynsel/errors.h"
#include "dynsel/experiment.h"
#include "dynsel/instance_io.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct RunFlags {
  std::string config;
  std::string out = "out";
  std::optional<int> seeds;
  std::optional<uint64_t> seed_offset;
  std::optional<int> workers;
};

dynsel::ExperimentConfig Load(const std::string& path,
                              const std::string& experiment) {
  nlohmann::json j = dynsel::ReadJsonFile(path);
  if (!j.is_object()) throw dynsel::ConfigError("config must be a JSON object");
  if (!experiment.empty()) {
    if (experiment != "transcript" && j.contains("experiment") &&
        j["experiment"] != experiment) {
      throw dynsel::ConfigError("config is for experiment '" +
                                j["experiment"].dump() + "', not '" +
                                experiment + "'");
    }
    j["experiment"] = experiment;
  }
  const std::string dir =
      std::filesystem::absolute(path).parent_path().string();
  return dynsel::ParseExperimentConfig(j, dir);
}

int RunCommand(const RunFlags& flags, const std::string& experiment) {
  dynsel::ExperimentConfig config = Load(flags.config, experiment);
  dynsel::OverrideSeeds(config, flags.seeds, flags.seed_offset);
  if (flags.workers) config.workers = *flags.workers;
  const dynsel::ExperimentOutput output = dynsel::RunExperiment(config);
  dynsel::WriteExperimentOutput(output, flags.out);
  if (output.failed) {
    std::cerr << "invariant violation: " << output.error << "\n";
    return kExitInvariant;
  }
  std::cout << output.summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal OCRS and online selection experiments"};
  app.require_subcommand(0, 1);
  bool schema_flag = false;
  app.add_flag("--schema", schema_flag, "Print the runs.csv column schema");

  RunFlags flags;
  auto add_run_flags = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Experiment config (JSON)")
        ->required();
    sub->add_option("--out", flags.out, "Output directory")
        ->capture_default_str();
    sub->add_option("--seeds", flags.seeds, "Number of seeds");
    sub->add_option("--seed-offset", flags.seed_offset, "First seed");
    sub->add_option("--workers", flags.workers, "Worker threads");
  };

  std::vector<std::pair<CLI::App*, std::string>> runners;
  for (const std::string& name : dynsel::ExperimentNames()) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    add_run_flags(sub);
    runners.emplace_back(sub, name);
  }
  CLI::App* run =
      app.add_subcommand("run", "Run the experiment named in the config");
  add_run_flags(run);

  CLI::App* transcript =
      app.add_subcommand("transcript", "Print one run's selection transcript");
  std::string transcript_config;
  uint64_t transcript_seed = 0;
  transcript->add_option("--config", transcript_config, "Config (JSON)")
      ->required();
  transcript->add_option("--seed", transcript_seed, "Run seed");

  CLI::App* schema = app.add_subcommand("schema", "Print the runs.csv schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (schema_flag || schema->parsed()) {
      std::cout << dynsel::CsvSchema();
      return 0;
    }
    if (transcript->parsed()) {
      const dynsel::ExperimentConfig config =
          Load(transcript_config, "transcript");
      std::cout << dynsel::AuditTranscript(config, transcript_seed);
      return 0;
    }
    if (run->parsed()) return RunCommand(flags, "");
    for (const auto& [sub, name] : runners) {
      if (sub->parsed()) return RunCommand(flags, name);
    }
    std::cout << app.help();
    return 0;
  } catch (const dynsel::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dynsel::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dynsel::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
