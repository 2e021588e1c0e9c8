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

// Seeded experiment driver shared by the command-line tool and the tests.
//
// A config is a JSON object
//   {"experiment": "<name>", "seeds": <count> | [s0, s1, ...],
//    "seed_offset": k, "workers": n, ...experiment parameters...}
// Seeds fan out across a worker pool; rows are merged in seed order, so the
// CSV only depends on the config.

#ifndef DYNSEL_EXPERIMENT_H_
#define DYNSEL_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dynsel {

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json params;
  std::vector<uint64_t> seeds;
  // 0 picks the hardware concurrency.
  int workers = 0;
  // Relative paths in params resolve against this directory.
  std::string base_dir = ".";
};

// Throws ConfigError on a missing or invalid field.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& j,
                                       const std::string& base_dir);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Overrides from the command line.
void OverrideSeeds(ExperimentConfig& config, std::optional<int> count,
                   std::optional<uint64_t> offset);

struct ExperimentOutput {
  std::string csv;
  nlohmann::ordered_json summary;
  // Set when a run hit an invariant violation; `csv` then holds the rows of
  // all seeds before the failing one.
  bool failed = false;
  std::string error;
};

// Throws ConfigError for invalid configs. Invariant violations are reported
// through ExperimentOutput::failed.
ExperimentOutput RunExperiment(const ExperimentConfig& config);

// Writes runs.csv and summary.json into `out_dir` (created if missing).
void WriteExperimentOutput(const ExperimentOutput& output,
                           const std::string& out_dir);

// One temporal OCRS run on the config's instance, as JSON lines with one
// transcript entry per element. Uses the same "instance", "b" and "x"
// parameters as the selectability experiment.
std::string AuditTranscript(const ExperimentConfig& config, uint64_t seed);

std::vector<std::string> ExperimentNames();
// Column documentation for every experiment's runs.csv.
std::string CsvSchema();

}  // namespace dynsel

#endif  // DYNSEL_EXPERIMENT_H_
