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

#ifndef DYNSC_RUNS_HPP_
#define DYNSC_RUNS_HPP_

#include <map>
#include <optional>

#include "dynsc/levels.hpp"

namespace dynsc {

struct PoolConfig {
  double eps = 0.1;         // in (0, 1/10)
  double eps_del = -1.0;    // in (0, eps/16); negative means eps/20
  std::size_t n_max = 0;    // upper bound on ground-set size, required
  double rho = 1.0;         // weight ratio bound
  std::uint64_t seed = 0;
  bool theory_mode = false;
  int t_override = 200;
  // Retrieval accepts runs with f(chosen) >= (1 - qualify_factor*eps)*f(V).
  double qualify_factor = 1.0;

  void validate() const;
  double effective_eps_del() const { return eps_del < 0 ? eps / 20 : eps_del; }
};

// The family of threshold runs, indexed by the integer exponent i with
// threshold (1+eps)^i. Runs are created lazily the first time an update's
// index interval touches them, and are initialized over the part of the
// live set whose interval contains that index, so later routed updates
// always find a consistent run.
class RunPool {
 public:
  RunPool(const EvaluationOracle& f, const GroundSet& ground,
          PoolConfig config);

  // Integer interval of run indices responsible for e, empty when the
  // element has zero density. One oracle call on first use per element.
  std::optional<std::pair<int, int>> index_interval(ElementId e);

  void insert(ElementId e);
  void erase(ElementId e);

  // Candidate run indices for retrieval; pre: f_v > 0 and live nonempty.
  std::pair<int, int> retrieval_interval(double f_v) const;

  struct Retrieved {
    IdSet ids;
    double value = 0.0;
    double cost = 0.0;
    double f_v = 0.0;
    std::optional<int> index;
  };
  // Cheapest qualifying solution among instantiated runs in the retrieval
  // interval. Two oracle calls: f(V) and f of the returned set. Throws
  // InternalInvariantError if live elements exist with positive value yet
  // no run qualifies (the theory rules that out).
  Retrieved retrieve() const;

  const IdSet& live() const { return live_; }
  const std::map<int, InstanceState>& runs() const { return runs_; }
  const PoolConfig& config() const { return config_; }
  const GroundSet& ground() const { return *ground_; }

  std::uint64_t reconstruction_count() const;
  // Runs touched by the most recent insert/erase (for targeted checks).
  const std::vector<int>& last_touched() const { return last_touched_; }

 private:
  double unit_density(ElementId e);
  std::optional<std::pair<int, int>> interval_of(double density) const;
  InstanceState& run_at(int index);

  const EvaluationOracle* oracle_;
  const GroundSet* ground_;
  PoolConfig config_;
  GeometricGrid grid_;
  std::map<int, InstanceState> runs_;
  IdSet live_;
  std::vector<double> density_cache_;  // d(e) = f({e}) / w(e), NaN unknown
  std::vector<int> last_touched_;
};

// Selection rule used by retrieve(), split out for direct testing: picks
// the minimum-cost qualifying candidate, ties by smaller index.
struct RetrievalCandidate {
  int index;
  double chosen_value;  // cached f of the run's solution, deletions ignored
  double cost;          // cost of the run's solution minus deletions
};
std::optional<int> pick_best_run(const std::vector<RetrievalCandidate>& c,
                                 double f_v, double eps,
                                 double qualify_factor);

}  // namespace dynsc

#endif  // DYNSC_RUNS_HPP_
