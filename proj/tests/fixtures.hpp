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

#ifndef DYNSC_TESTS_FIXTURES_HPP_
#define DYNSC_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "dynsc/oracle.hpp"
#include "dynsc/rng.hpp"

namespace dynsc::testing {

// The worked three-set instance used across the suites:
//   v1 covers {a,b,c} at weight 3, v2 covers {a,b} at weight 1,
//   v3 covers {c} at weight 1. Optimal full cover is {v2,v3} at cost 2.
inline CoverageInstance three_set_instance() {
  return CoverageInstance::from_sets(
      4.0,
      {{"v1", 3.0}, {"v2", 1.0}, {"v3", 1.0}},
      {{"a", "b", "c"}, {"a", "b"}, {"c"}});
}

// Elements with pairwise disjoint covers; marginals never interact.
inline CoverageInstance modular_instance(std::size_t n,
                                         std::size_t items_each = 2,
                                         double weight = 1.0) {
  std::vector<GroundElement> elements;
  std::vector<std::vector<std::string>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    elements.push_back({"v" + std::to_string(i + 1), weight});
    std::vector<std::string> cover;
    for (std::size_t j = 0; j < items_each; ++j) {
      cover.push_back("i" + std::to_string(i) + "_" + std::to_string(j));
    }
    covers.push_back(cover);
  }
  return CoverageInstance::from_sets(std::max(weight, 1.0), elements, covers);
}

struct RandomFixtureParams {
  std::size_t n = 12;            // elements
  std::size_t universe = 24;     // items
  std::size_t min_cover = 1;
  std::size_t max_cover = 5;
  double rho = 4.0;              // weights drawn dyadic in [1, rho]
};

// Random weighted coverage instance. Weights are quarters (k/4) so sums of
// weights and coverage values are exact in double arithmetic regardless of
// summation order.
inline CoverageInstance random_coverage(const RandomFixtureParams& p,
                                        std::uint64_t seed) {
  Rng rng = make_substream(seed, RngDomain::kFixture, 0);
  std::vector<GroundElement> elements;
  std::vector<std::vector<std::string>> covers;
  const std::uint64_t weight_quarters =
      static_cast<std::uint64_t>(p.rho * 4.0) - 4;
  for (std::size_t i = 0; i < p.n; ++i) {
    double w = 1.0;
    if (weight_quarters > 0) {
      w = 1.0 + static_cast<double>(rng.below(weight_quarters + 1)) / 4.0;
    }
    elements.push_back({"e" + std::to_string(i), w});
    std::size_t span = p.max_cover - p.min_cover + 1;
    std::size_t len = p.min_cover + rng.below(span);
    std::vector<std::string> cover;
    for (std::size_t j = 0; j < len; ++j) {
      cover.push_back("u" + std::to_string(rng.below(p.universe)));
    }
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    covers.push_back(cover);
  }
  return CoverageInstance::from_sets(p.rho, elements, covers);
}

// Naive density greedy, the independent yardstick for the lazy one.
inline IdSet naive_greedy_cover(const EvaluationOracle& f,
                                const GroundSet& ground, const IdSet& v,
                                double target_fraction) {
  const double goal = target_fraction * f.evaluate(v);
  IdSet solution;
  double value = 0.0;
  IdSet remaining = v;
  while (value < goal) {
    double best_density = -1.0;
    ElementId best = 0;
    bool found = false;
    for (ElementId e : remaining) {
      double d = marginal_density(f, ground, e, solution, value);
      if (d > best_density) {
        best_density = d;
        best = e;
        found = true;
      }
    }
    if (!found) break;
    set_erase(remaining, best);
    double gain = marginal_gain(f, best, solution, value);
    set_insert(solution, best);
    value += gain;
  }
  return solution;
}

// Exact per-position acceptance probabilities of the sequential pass, by
// enumerating every permutation of l. Only sane for |l| <= 7.
inline std::vector<double> exact_expected_x(const EvaluationOracle& f,
                                            const GroundSet& ground,
                                            const IdSet& l, const IdSet& g,
                                            double f_g, double tau_level) {
  std::vector<ElementId> perm(l);
  std::sort(perm.begin(), perm.end());
  std::vector<double> sums(l.size() + 1, 0.0);
  std::size_t count = 0;
  do {
    IdSet scratch = g;
    double value = f_g;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      double gain = marginal_gain(f, perm[i], scratch, value);
      if (gain / ground.weight(perm[i]) >= tau_level) {
        sums[i] += 1.0;
        set_insert(scratch, perm[i]);
        value += gain;
      }
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& s : sums) s /= static_cast<double>(count);
  return sums;
}

}  // namespace dynsc::testing

#endif  // DYNSC_TESTS_FIXTURES_HPP_
