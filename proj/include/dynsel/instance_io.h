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

// Instance files:
//   {"m": 3, "kind": "rank1" | "matching" | "knapsack",
//    "kind_params": {"edges": [[u, v], ...]} | {"sizes": [...], "budget": B},
//    "elements": [{"id": 0, "weight": 1.0, "activity": -1, "arrival": 1}]}
// Activity -1 encodes infinity.

#ifndef DYNSEL_INSTANCE_IO_H_
#define DYNSEL_INSTANCE_IO_H_

#include <string>

#include "dynsel/constraints.h"
#include "json.hpp"

namespace dynsel {

struct Instance {
  ConstraintFamily family = ConstraintFamily::Rank1(0);
  InstanceSequence seq;
};

// Throws ConfigError on malformed or invalid input.
Instance InstanceFromJson(const nlohmann::json& j);
Instance LoadInstance(const std::string& path);
ConstraintFamily FamilyFromJson(int m, const std::string& kind,
                                const nlohmann::json& params);

nlohmann::ordered_json InstanceToJson(const ConstraintFamily& family,
                                      const InstanceSequence& seq);

// Reads a whole JSON file; ConfigError on I/O or parse failure.
nlohmann::json ReadJsonFile(const std::string& path);

}  // namespace dynsel

#endif  // DYNSEL_INSTANCE_IO_H_
