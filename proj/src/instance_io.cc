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

#include "dynsel/instance_io.h"

#include <fstream>
#include <utility>
#include <vector>

#include "dynsel/errors.h"

namespace dynsel {

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

ConstraintFamily FamilyFromJson(int m, const std::string& kind,
                                const nlohmann::json& params) {
  try {
    if (kind == "rank1") return ConstraintFamily::Rank1(m);
    if (kind == "matching") {
      std::vector<Edge> edges;
      for (const auto& je : params.at("edges")) {
        edges.push_back({je.at(0).get<int>(), je.at(1).get<int>()});
      }
      if (static_cast<int>(edges.size()) != m) {
        throw ConfigError("matching needs exactly one edge per element");
      }
      return ConstraintFamily::Matching(std::move(edges));
    }
    if (kind == "knapsack") {
      auto sizes = params.at("sizes").get<std::vector<double>>();
      if (static_cast<int>(sizes.size()) != m) {
        throw ConfigError("knapsack needs exactly one size per element");
      }
      return ConstraintFamily::Knapsack(std::move(sizes),
                                        params.at("budget").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed kind_params: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("invalid kind_params: ") + e.what());
  }
  throw ConfigError("unknown constraint kind '" + kind + "'");
}

Instance InstanceFromJson(const nlohmann::json& j) {
  try {
    const int m = j.at("m").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json params = j.contains("kind_params")
                                      ? j.at("kind_params")
                                      : nlohmann::json::object();
    std::vector<Element> elements;
    for (const auto& je : j.at("elements")) {
      Element el;
      el.id = je.at("id").get<int>();
      el.weight = je.value("weight", 0.0);
      el.activity = Activity::FromEncoded(je.at("activity").get<int64_t>());
      el.arrival = je.at("arrival").get<int64_t>();
      elements.push_back(el);
    }
    if (static_cast<int>(elements.size()) != m) {
      throw ConfigError("instance lists " + std::to_string(elements.size()) +
                        " elements but m = " + std::to_string(m));
    }
    Instance out;
    out.family = FamilyFromJson(m, kind, params);
    out.seq = InstanceSequence(std::move(elements));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed instance: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

nlohmann::ordered_json InstanceToJson(const ConstraintFamily& family,
                                      const InstanceSequence& seq) {
  nlohmann::ordered_json out;
  out["m"] = seq.size();
  out["kind"] = std::string(family.name());
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (family.kind() == FamilyKind::kMatching) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const Edge& e : family.edges()) edges.push_back({e.u, e.v});
    params["edges"] = edges;
  } else if (family.kind() == FamilyKind::kKnapsack) {
    params["sizes"] = family.sizes();
    params["budget"] = family.budget();
  }
  out["kind_params"] = params;
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (const Element& el : seq.elements()) {
    elements.push_back({{"id", el.id},
                        {"weight", el.weight},
                        {"activity", el.activity.Encoded()},
                        {"arrival", el.arrival}});
  }
  out["elements"] = elements;
  return out;
}

}  // namespace dynsel
