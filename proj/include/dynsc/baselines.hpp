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

#ifndef DYNSC_BASELINES_HPP_
#define DYNSC_BASELINES_HPP_

#include "dynsc/oracle.hpp"

namespace dynsc {

// Density greedy: repeatedly adds the element with the highest marginal
// density until f(S) >= target_fraction * f(V), ties by smaller id.
// Implemented with lazy re-evaluation on a priority queue; the output is
// identical to the naive argmax loop.
IdSet greedy_cover(const EvaluationOracle& f, const GroundSet& ground,
                   const IdSet& v, double target_fraction);

struct BruteForceResult {
  IdSet ids;
  double cost = 0.0;
};

// Exact minimum-cost subset with f(S) >= target_fraction * f(V), by
// enumeration over all subsets; refuses |v| > 22. Ties broken by cheaper
// then lexicographically smaller id sequence. Coverage oracles take a
// bitmask fast path; anything else is enumerated through evaluate.
BruteForceResult brute_force_opt(const EvaluationOracle& f,
                                 const GroundSet& ground, const IdSet& v,
                                 double target_fraction);

// Single pass in id order adding every element whose marginal density
// clears tau; a static sanity baseline.
IdSet static_threshold_cover(const EvaluationOracle& f,
                             const GroundSet& ground, const IdSet& v,
                             double tau);

}  // namespace dynsc

#endif  // DYNSC_BASELINES_HPP_
