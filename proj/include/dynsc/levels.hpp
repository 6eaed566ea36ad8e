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

#ifndef DYNSC_LEVELS_HPP_
#define DYNSC_LEVELS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dynsc/common.hpp"
#include "dynsc/grid.hpp"
#include "dynsc/oracle.hpp"
#include "dynsc/rng.hpp"

namespace dynsc {

// Parameters of one threshold run.
struct RunParams {
  double tau = 1.0;        // density threshold of this run
  double eps = 0.1;        // must be in (0, 1/10)
  double eps_del = 0.005;  // must be in (0, eps/16)
  std::size_t sample_n = 1;  // the n in the trial-count bound
  bool theory_mode = false;  // trial count from the concentration bound
  int t_override = 200;      // trials in practical mode
};

// One addition to the cumulative solution, with the marginal density the
// element had at that moment. Feeds the cost-chain audit.
struct AdditionRecord {
  ElementId id;
  double density;
  double tau_level;
  int level;
};

// One stage of the hierarchy.
//
// candidates  - elements still valuable at this level (the filtered set)
// extended    - candidates plus insertions buffered since the last rebuild
// chosen      - cumulative solution through this level
// bucket      - the largest (density, weight) bucket candidates fell into
// sample      - ordered random sample drawn from bucket
//
// Level 0 is the base: candidates/extended hold every element ever routed
// to this run, chosen is empty. The last level (index last_level()+1) is
// the empty terminator required by the stopping invariant.
struct Level {
  IdSet candidates;
  IdSet extended;
  IdSet chosen;
  IdSet bucket;
  std::vector<ElementId> sample;
  double tau_level = 0.0;
  std::size_t sample_size = 0;
  int bucket_density_index = 0;
  int bucket_weight_index = 0;
  double chosen_value = 0.0;  // cached f(chosen)
  std::vector<AdditionRecord> additions;
};

// {e in l : marginal density of e w.r.t. g >= tau}. Makes |l| oracle
// calls; f_g must equal f(g).
IdSet filter(const EvaluationOracle& f, const GroundSet& ground,
             const IdSet& l, const IdSet& g, double f_g, double tau);

// Buckets keyed by (density row, weight column); ordered so the
// lexicographically smallest key wins size ties.
using BucketMap = std::map<std::pair<int, int>, IdSet>;

// Partitions l by floor-log of marginal density over tau (row) and
// floor-log of weight (column). Every element must clear tau; anything
// below is an internal invariant violation.
BucketMap bucketize(const EvaluationOracle& f, const GroundSet& ground,
                    const GeometricGrid& grid, const IdSet& l, const IdSet& g,
                    double f_g, double tau);

struct BucketChoice {
  IdSet bucket;
  double tau_level;  // tau * (1+eps)^density_index, the exact grid product
  int density_index;
  int weight_index;
};

// Maximum-cardinality bucket; ties broken by smallest (row, column).
BucketChoice select_largest_bucket(const BucketMap& buckets, double tau,
                                   const GeometricGrid& grid);

// Simulates adding a uniformly random permutation of l to a scratch copy
// of g. Entry k (0-based) is 1 iff the k-th drawn element cleared
// tau_level at its turn; the final entry is always 0. Makes at most |l|
// oracle calls and leaves all inputs untouched.
std::vector<std::uint8_t> apply_and_revert(const EvaluationOracle& f,
                                           const GroundSet& ground,
                                           const IdSet& l, const IdSet& g,
                                           double f_g, double tau_level,
                                           Rng& rng);

// Trial count for the simulation: ceil(4 eps^-2 ln(n^12 / eps)), evaluated
// in log space to dodge overflow.
std::uint64_t sample_trial_count(double eps, std::size_t n);

// The simulated sample-size choice: runs trials of apply_and_revert,
// averages the indicator vectors and returns one less than the first
// position whose mean drops below 1 - eps. Requires every element of l to
// clear tau_level on g (the filter precondition), which forces the result
// into [1, |l|].
std::size_t calc_sample_size(const EvaluationOracle& f,
                             const GroundSet& ground, const IdSet& l,
                             const IdSet& g, double f_g, double tau_level,
                             double eps, std::size_t n, Rng& rng,
                             bool theory_mode,
                             std::optional<int> t_override);

// Uniformly random ordered sample of size m without replacement, drawn by
// partial Fisher-Yates over the id-sorted bucket.
std::vector<ElementId> draw_ordered_sample(const IdSet& bucket, std::size_t m,
                                           Rng& rng);

// One threshold run: the leveled structure plus the deletion ledger.
// Single-owner: one mutation at a time, reads must not overlap mutations.
// Distinct runs are independent and may share one oracle.
class InstanceState {
 public:
  InstanceState(const EvaluationOracle& f, const GroundSet& ground,
                RunParams params, Rng rng);

  // Rebuilds from scratch over the given live set.
  void init(const IdSet& v);

  // Inserts a non-live element; may trigger a partial rebuild.
  void insert(ElementId e);

  // Deletes a live element lazily; may trigger a partial rebuild.
  void erase(ElementId e);

  struct Solution {
    IdSet ids;
    double value = 0.0;
    double cost = 0.0;
  };
  // The maintained solution with deletions applied; one oracle call.
  Solution current_solution() const;

  int last_level() const { return last_level_; }  // T
  const std::vector<Level>& levels() const { return levels_; }
  const IdSet& deleted() const { return deleted_; }
  const RunParams& params() const { return params_; }
  const GroundSet& ground() const { return *ground_; }
  const EvaluationOracle& oracle() const { return *oracle_; }
  std::uint64_t reconstruction_count() const { return reconstructions_; }

  bool contains_live(ElementId e) const {
    return set_contains(levels_[0].extended, e) &&
           !set_contains(deleted_, e);
  }

  // Exposed for the verifier's frozen-history replay.
  const GeometricGrid& grid() const { return grid_; }

 private:
  void reconstruct(int from_level);

  const EvaluationOracle* oracle_;
  const GroundSet* ground_;
  RunParams params_;
  GeometricGrid grid_;
  Rng rng_;
  std::vector<Level> levels_;  // size last_level_ + 2
  IdSet deleted_;              // D
  int last_level_ = 0;         // T
  std::uint64_t reconstructions_ = 0;
};

}  // namespace dynsc

#endif  // DYNSC_LEVELS_HPP_
