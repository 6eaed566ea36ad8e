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

#include "dynsc/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dynsc {

namespace {

using nlohmann::json;

CoverageInstance parse_sets_form(const json& doc) {
  if (!doc.contains("rho")) {
    throw InvalidArgumentError("instance missing required field: rho");
  }
  double rho = doc.at("rho").get<double>();
  std::vector<GroundElement> elements;
  std::vector<std::vector<std::string>> covers;
  for (const json& entry : doc.at("elements")) {
    GroundElement e;
    e.id = entry.at("id").get<std::string>();
    e.weight = entry.value("weight", 1.0);
    elements.push_back(e);
    covers.push_back(entry.value("covers", std::vector<std::string>{}));
  }
  std::unordered_map<std::string, double> item_weights;
  if (doc.contains("item_weights")) {
    for (auto it = doc.at("item_weights").begin();
         it != doc.at("item_weights").end(); ++it) {
      item_weights[it.key()] = it.value().get<double>();
    }
  }
  return CoverageInstance::from_sets(rho, elements, covers, item_weights);
}

CoverageInstance parse_graph_form(const json& doc) {
  const json& graph = doc.at("graph");
  std::vector<std::string> nodes =
      graph.at("nodes").get<std::vector<std::string>>();

  // Closed neighborhoods: every node covers itself plus its neighbors.
  std::map<std::string, std::vector<std::string>> neighborhood;
  for (const std::string& u : nodes) neighborhood[u] = {u};
  if (graph.contains("edges")) {
    for (const json& edge : graph.at("edges")) {
      std::string u = edge.at(0).get<std::string>();
      std::string v = edge.at(1).get<std::string>();
      if (!neighborhood.count(u) || !neighborhood.count(v)) {
        throw InvalidArgumentError("edge endpoint not in nodes: " + u + "," +
                                   v);
      }
      neighborhood[u].push_back(v);
      neighborhood[v].push_back(u);
    }
  }

  std::unordered_map<std::string, double> node_weight;
  double max_weight = 1.0;
  if (doc.contains("weights")) {
    for (auto it = doc.at("weights").begin(); it != doc.at("weights").end();
         ++it) {
      node_weight[it.key()] = it.value().get<double>();
      max_weight = std::max(max_weight, it.value().get<double>());
    }
  }
  double rho = doc.value("rho", max_weight);

  std::vector<GroundElement> elements;
  std::vector<std::vector<std::string>> covers;
  for (const std::string& u : nodes) {
    auto wit = node_weight.find(u);
    elements.push_back({u, wit == node_weight.end() ? 1.0 : wit->second});
    auto& cover = neighborhood[u];
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    covers.push_back(cover);
  }
  return CoverageInstance::from_sets(rho, elements, covers, {});
}

}  // namespace

CoverageInstance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("instance JSON malformed: ") +
                               e.what());
  }
  try {
    if (doc.contains("graph")) return parse_graph_form(doc);
    if (doc.contains("elements")) return parse_sets_form(doc);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("instance JSON malformed: ") +
                               e.what());
  }
  throw InvalidArgumentError(
      "instance JSON must contain either \"elements\" or \"graph\"");
}

CoverageInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading instance file: " + path);
  return parse_instance(buf.str());
}

}  // namespace dynsc
