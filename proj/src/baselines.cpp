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

#include "dynsc/baselines.hpp"

#include <algorithm>
#include <queue>

namespace dynsc {

namespace {

struct QueueEntry {
  double density;
  ElementId id;
  std::size_t round;  // selection round the density was computed in
};

struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.density != b.density) return a.density < b.density;
    return a.id > b.id;  // smaller id wins ties
  }
};

// Unwraps counting shims so the coverage fast path still triggers when the
// caller hands us an instrumented oracle.
const CoverageInstance* as_coverage(const EvaluationOracle& f) {
  const EvaluationOracle* cur = &f;
  while (const auto* counting = dynamic_cast<const CountingOracle*>(cur)) {
    cur = &counting->inner();
  }
  return dynamic_cast<const CoverageInstance*>(cur);
}

BruteForceResult brute_force_generic(const EvaluationOracle& f,
                                     const GroundSet& ground, const IdSet& v,
                                     double goal) {
  BruteForceResult best;
  bool found = false;
  const std::size_t n = v.size();
  IdSet subset;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    subset.clear();
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        subset.push_back(v[i]);
        cost += ground.weight(v[i]);
      }
    }
    if (found && cost > best.cost) continue;
    if (f.evaluate(subset) < goal) continue;
    if (!found || cost < best.cost ||
        (cost == best.cost &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      best.ids.begin(), best.ids.end()))) {
      best.ids = subset;
      best.cost = cost;
      found = true;
    }
  }
  return best;
}

// Subset-union dynamic program over item bitmasks. Enumerates the same
// search space as the generic path but derives each union's value from its
// predecessor instead of an oracle call.
BruteForceResult brute_force_coverage(const CoverageInstance& cov,
                                      const GroundSet& ground, const IdSet& v,
                                      double goal) {
  const std::size_t n = v.size();
  const std::size_t subsets = std::size_t{1} << n;

  // Restrict the item universe to what v can reach.
  std::vector<std::uint32_t> item_slot(cov.item_count(), UINT32_MAX);
  std::vector<double> slot_weight;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t item : cov.cover_of(v[i])) {
      if (item_slot[item] == UINT32_MAX) {
        item_slot[item] = static_cast<std::uint32_t>(slot_weight.size());
        slot_weight.push_back(cov.item_weight(item));
      }
    }
  }
  const std::size_t words = (slot_weight.size() + 63) / 64;
  std::vector<std::uint64_t> element_mask(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t item : cov.cover_of(v[i])) {
      std::uint32_t s = item_slot[item];
      element_mask[i * words + s / 64] |= 1ull << (s % 64);
    }
  }

  std::vector<std::uint64_t> union_mask(subsets * words, 0);
  std::vector<double> value(subsets, 0.0);

  BruteForceResult best;
  bool found = false;
  if (0.0 >= goal) found = true;  // the empty set already qualifies
  IdSet subset;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const std::size_t low_bit =
        static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    const std::uint64_t* base = &union_mask[rest * words];
    const std::uint64_t* add = &element_mask[low_bit * words];
    std::uint64_t* cur = &union_mask[mask * words];
    double gained = 0.0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t fresh = add[w] & ~base[w];
      cur[w] = base[w] | add[w];
      while (fresh) {
        gained += slot_weight[w * 64 +
                              static_cast<std::size_t>(
                                  __builtin_ctzll(fresh))];
        fresh &= fresh - 1;
      }
    }
    value[mask] = value[rest] + gained;
    if (value[mask] < goal) continue;

    double cost = 0.0;
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        subset.push_back(v[i]);
        cost += ground.weight(v[i]);
      }
    }
    if (!found || cost < best.cost ||
        (cost == best.cost &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      best.ids.begin(), best.ids.end()))) {
      best.ids = subset;
      best.cost = cost;
      found = true;
    }
  }
  return best;
}

}  // namespace

IdSet greedy_cover(const EvaluationOracle& f, const GroundSet& ground,
                   const IdSet& v, double target_fraction) {
  if (!(target_fraction > 0.0) || !(target_fraction <= 1.0)) {
    throw InvalidArgumentError("target_fraction must lie in (0, 1]");
  }
  const double f_v = f.evaluate(v);
  const double goal = target_fraction * f_v;
  IdSet solution;
  double value = 0.0;
  if (value >= goal) return solution;

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
  std::size_t round = 0;
  for (ElementId e : v) {
    queue.push({marginal_density(f, ground, e, solution, value), e, round});
  }
  while (value < goal) {
    if (queue.empty()) {
      throw InternalInvariantError("greedy_cover: goal unreachable");
    }
    QueueEntry top = queue.top();
    queue.pop();
    if (top.round != round) {
      // Stale key: refresh against the current solution and reinsert.
      // Marginals only shrink, so a fresh top is the true argmax.
      top.density = marginal_density(f, ground, top.id, solution, value);
      top.round = round;
      queue.push(top);
      continue;
    }
    double gain = marginal_gain(f, top.id, solution, value);
    set_insert(solution, top.id);
    value += gain;
    ++round;
  }
  return solution;
}

BruteForceResult brute_force_opt(const EvaluationOracle& f,
                                 const GroundSet& ground, const IdSet& v,
                                 double target_fraction) {
  if (!(target_fraction > 0.0) || !(target_fraction <= 1.0)) {
    throw InvalidArgumentError("target_fraction must lie in (0, 1]");
  }
  if (v.size() > 22) {
    throw InvalidArgumentError(
        "brute_force_opt: instance too large to enumerate (|V| > 22)");
  }
  const double goal = target_fraction * f.evaluate(v);
  if (const CoverageInstance* cov = as_coverage(f); cov && v.size() <= 20) {
    return brute_force_coverage(*cov, ground, v, goal);
  }
  return brute_force_generic(f, ground, v, goal);
}

IdSet static_threshold_cover(const EvaluationOracle& f,
                             const GroundSet& ground, const IdSet& v,
                             double tau) {
  IdSet solution;
  double value = 0.0;
  for (ElementId e : v) {
    double gain = marginal_gain(f, e, solution, value);
    if (gain / ground.weight(e) >= tau && gain > 0.0) {
      set_insert(solution, e);
      value += gain;
    }
  }
  return solution;
}

}  // namespace dynsc
