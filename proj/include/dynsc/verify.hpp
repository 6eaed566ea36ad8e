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

#ifndef DYNSC_VERIFY_HPP_
#define DYNSC_VERIFY_HPP_

#include <string>

#include "dynsc/levels.hpp"

namespace dynsc {

// A copy of one run's externally visible state, detached from the run so
// tests can corrupt it and watch the checkers catch the damage.
struct LevelsSnapshot {
  double tau = 0.0;
  double eps_del = 0.0;
  int last_level = 0;
  IdSet deleted;
  std::vector<Level> levels;
};

LevelsSnapshot snapshot_of(const InstanceState& run);

struct InvariantReport {
  struct Violation {
    std::string invariant;  // "filter" | "subset" | "deviation" | "stopping"
    int level;
    std::string detail;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Recomputes every level's filtered view from scratch and checks the four
// structural invariants. Violations are report entries, never throws.
InvariantReport check_level_invariants(const EvaluationOracle& f,
                                       const GroundSet& ground,
                                       const LevelsSnapshot& snap);
InvariantReport check_level_invariants(const EvaluationOracle& f,
                                       const GroundSet& ground,
                                       const InstanceState& run);

// Monte-Carlo estimate of the per-position acceptance probabilities of
// the sequential simulation; the independent yardstick for judging a
// chosen sample size. Returns |l| + 1 means, the last one always zero.
std::vector<double> estimate_expected_x(const EvaluationOracle& f,
                                        const GroundSet& ground,
                                        const IdSet& l, const IdSet& g,
                                        double f_g, double tau_level,
                                        std::size_t trials, Rng& rng);

// The sampling step's inputs frozen at one level, for replaying the draw
// in isolation.
struct FrozenHistory {
  IdSet bucket;
  std::size_t sample_size = 0;
};

FrozenHistory freeze_presample(const InstanceState& run, int level);

struct UniformityReport {
  std::vector<double> frequency;  // per bucket element, id order
  double expected = 0.0;          // m / |B|
  double band = 0.0;              // 4-sigma binomial band
  double chi_square = 0.0;
  std::size_t repeats = 0;
  bool pass = false;
};

// Redraws the sample `repeats` times with fresh randomness through the
// production sampler and checks every element's inclusion frequency
// against the uniform expectation within a 4-sigma binomial band.
UniformityReport uniformity_test(const FrozenHistory& history,
                                 std::size_t repeats, Rng& rng);

struct CostChainReport {
  bool ok = true;
  std::string detail;
};

// Checks that every logged addition cleared its level threshold (itself at
// least the run threshold) and that total solution weight is bounded by
// f(solution) / tau.
CostChainReport audit_cost_chain(const EvaluationOracle& f,
                                 const GroundSet& ground,
                                 const LevelsSnapshot& snap);
CostChainReport audit_cost_chain(const EvaluationOracle& f,
                                 const GroundSet& ground,
                                 const InstanceState& run);

}  // namespace dynsc

#endif  // DYNSC_VERIFY_HPP_
