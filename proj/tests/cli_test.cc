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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dynsel/errors.h"
#include "dynsel/experiment.h"
#include "json.hpp"

namespace dynsel {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dynsel_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int Cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(DYNSEL_CLI_PATH) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Config(const std::string& name) {
  return std::string(DYNSEL_CONFIG_DIR) + "/" + name;
}

TEST_CASE("malformed json exits with code 2") {
  const fs::path dir = TempDir("malformed");
  std::ofstream(dir / "bad.json") << "{\"experiment\": \"selectability\",";
  const int code = Cli("run --config " + (dir / "bad.json").string() +
                           " --out " + (dir / "out").string(),
                       dir / "log");
  CHECK(code == 2);
  CHECK(Slurp(dir / "log").find("parse") != std::string::npos);
}

TEST_CASE("invalid configs exit with code 2") {
  const fs::path dir = TempDir("invalid");
  std::ofstream(dir / "a.json") << R"({"experiment": "nope", "seeds": 2})";
  CHECK(Cli("run --config " + (dir / "a.json").string(), dir / "log") == 2);
  std::ofstream(dir / "b.json")
      << R"({"experiment": "selectability", "seeds": [], "instance": "x"})";
  CHECK(Cli("run --config " + (dir / "b.json").string(), dir / "log") == 2);
  std::ofstream(dir / "c.json")
      << R"({"experiment": "selectability", "instance": "missing.json"})";
  CHECK(Cli("run --config " + (dir / "c.json").string(), dir / "log") == 2);
}

TEST_CASE("schema output") {
  const fs::path dir = TempDir("schema");
  CHECK(Cli("schema", dir / "log") == 0);
  const std::string text = Slurp(dir / "log");
  CHECK(text.find("selectable") != std::string::npos);
  CHECK(Cli("--schema", dir / "log2") == 0);
  CHECK(Slurp(dir / "log2") == text);
}

TEST_CASE("selectability summary carries the target") {
  const fs::path dir = TempDir("select");
  CHECK(Cli("selectability --config " + Config("selectability_rank1.json") +
                " --seeds 500 --out " + (dir / "out").string(),
            dir / "log") == 0);
  const auto summary =
      nlohmann::json::parse(Slurp(dir / "out" / "summary.json"));
  CHECK(summary["target"].get<double>() ==
        doctest::Approx(0.36788).epsilon(1e-5));
  CHECK(summary.contains("min_selectability"));
  CHECK(Slurp(dir / "out" / "runs.csv").rfind("seed,config,", 0) == 0);
}

TEST_CASE("matching summary carries the ratio") {
  const fs::path dir = TempDir("matching");
  CHECK(Cli("matching-appendix-b --config " +
                Config("matching_appendix_b.json") + " --seeds 300 --out " +
                (dir / "out").string(),
            dir / "log") == 0);
  const auto summary =
      nlohmann::json::parse(Slurp(dir / "out" / "summary.json"));
  CHECK(summary["target"].get<double>() == 0.5);
  CHECK(summary.contains("ratio"));
}

TEST_CASE("subcommand must agree with the config") {
  const fs::path dir = TempDir("mismatch");
  CHECK(Cli("regret-full --config " + Config("matching_appendix_b.json"),
            dir / "log") == 2);
}

TEST_CASE("invariant violations keep the partial csv") {
  const fs::path dir = TempDir("partial");
  std::ofstream(dir / "cfg.json") << R"({
    "experiment": "matching-appendix-b", "seeds": 10, "seed_offset": 100,
    "instance": ")" + Config("instances/jobs_2x3.json") +
                                         R"(", "debug_fail_seed": 104})";
  CHECK(Cli("run --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "out").string(),
            dir / "log") == 3);
  const std::string csv = Slurp(dir / "out" / "runs.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
}

TEST_CASE("csv output is reproducible across worker counts") {
  ExperimentConfig config =
      LoadExperimentConfig(Config("temporal_reduction.json"));
  OverrideSeeds(config, 300, 7);
  config.workers = 1;
  const ExperimentOutput a = RunExperiment(config);
  config.workers = 4;
  const ExperimentOutput b = RunExperiment(config);
  CHECK_FALSE(a.failed);
  CHECK(a.csv == b.csv);
  CHECK(a.summary.dump() == b.summary.dump());
  OverrideSeeds(config, std::nullopt, 8);
  CHECK(RunExperiment(config).csv != a.csv);
}

TEST_CASE("seed lists") {
  const auto config =
      ParseExperimentConfig(nlohmann::json{{"experiment", "lowerbound-c1"},
                                           {"seeds", {3, 5}},
                                           {"seed_offset", 10}},
                            ".");
  CHECK(config.seeds == std::vector<uint64_t>{13, 15});
  CHECK_THROWS_AS(ParseExperimentConfig(
                      nlohmann::json{{"experiment", "x"}, {"seeds", 0}}, "."),
                  ConfigError);
}

}  // namespace
}  // namespace dynsel
