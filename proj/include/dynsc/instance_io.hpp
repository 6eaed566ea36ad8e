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

#ifndef DYNSC_INSTANCE_IO_HPP_
#define DYNSC_INSTANCE_IO_HPP_

#include <string>

#include "dynsc/oracle.hpp"

namespace dynsc {

// Parses an instance from JSON text. Two shapes are accepted:
//
// Coverage sets:
//   {"rho": 4, "elements": [{"id": "v1", "weight": 2, "covers": ["a","b"]},
//                           ...],
//    "item_weights": {"a": 1.5, ...}}            // optional
//
// Dominating set over a graph, where f(S) = |N[S]|:
//   {"graph": {"nodes": ["u","v",...], "edges": [["u","v"], ...]},
//    "weights": {"u": 2, ...},                   // optional, default 1
//    "rho": 4}                                   // optional, default max w
CoverageInstance parse_instance(const std::string& json_text);

// Reads and parses an instance file; IoError carries the path.
CoverageInstance load_instance(const std::string& path);

}  // namespace dynsc

#endif  // DYNSC_INSTANCE_IO_HPP_
