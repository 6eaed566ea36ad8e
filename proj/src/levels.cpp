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

#include "dynsc/levels.hpp"

#include <cmath>

namespace dynsc {

IdSet filter(const EvaluationOracle& f, const GroundSet& ground,
             const IdSet& l, const IdSet& g, double f_g, double tau) {
  IdSet out;
  out.reserve(l.size());
  for (ElementId e : l) {
    if (marginal_density(f, ground, e, g, f_g) >= tau) out.push_back(e);
  }
  return out;
}

BucketMap bucketize(const EvaluationOracle& f, const GroundSet& ground,
                    const GeometricGrid& grid, const IdSet& l, const IdSet& g,
                    double f_g, double tau) {
  BucketMap buckets;
  for (ElementId e : l) {
    double density = marginal_density(f, ground, e, g, f_g);
    if (!(density >= tau)) {
      throw InternalInvariantError(
          "bucketize: element density below run threshold");
    }
    int row = grid.bucket_index(density, tau);
    int col = grid.bucket_index(ground.weight(e), 1.0);
    buckets[{row, col}].push_back(e);
  }
  return buckets;
}

BucketChoice select_largest_bucket(const BucketMap& buckets, double tau,
                                   const GeometricGrid& grid) {
  const IdSet* best = nullptr;
  std::pair<int, int> best_key{0, 0};
  for (const auto& [key, members] : buckets) {
    if (members.empty()) continue;
    if (best == nullptr || members.size() > best->size()) {
      best = &members;
      best_key = key;
    }
  }
  if (best == nullptr) {
    throw PreconditionError("select_largest_bucket: all buckets empty");
  }
  return BucketChoice{*best, tau * grid.power(best_key.first), best_key.first,
                      best_key.second};
}

std::vector<std::uint8_t> apply_and_revert(const EvaluationOracle& f,
                                           const GroundSet& ground,
                                           const IdSet& l, const IdSet& g,
                                           double f_g, double tau_level,
                                           Rng& rng) {
  std::vector<ElementId> order(l);
  rng.shuffle(order);

  std::vector<std::uint8_t> hits(l.size() + 1, 0);
  IdSet scratch = g;
  double value = f_g;
  for (std::size_t i = 0; i < order.size(); ++i) {
    double gain = marginal_gain(f, order[i], scratch, value);
    if (gain / ground.weight(order[i]) >= tau_level) {
      hits[i] = 1;
      set_insert(scratch, order[i]);
      value += gain;
    }
  }
  return hits;
}

std::uint64_t sample_trial_count(double eps, std::size_t n) {
  if (!(eps > 0.0) || n == 0) {
    throw InvalidArgumentError("sample_trial_count: eps > 0 and n >= 1");
  }
  double log_term =
      12.0 * std::log(static_cast<double>(n)) - std::log(eps);
  double t = std::ceil(4.0 / (eps * eps) * log_term);
  if (!(t >= 1.0)) t = 1.0;
  return static_cast<std::uint64_t>(t);
}

std::size_t calc_sample_size(const EvaluationOracle& f,
                             const GroundSet& ground, const IdSet& l,
                             const IdSet& g, double f_g, double tau_level,
                             double eps, std::size_t n, Rng& rng,
                             bool theory_mode,
                             std::optional<int> t_override) {
  if (l.empty()) {
    throw PreconditionError("calc_sample_size: candidate set is empty");
  }
  std::uint64_t trials;
  if (theory_mode) {
    trials = sample_trial_count(eps, n);
  } else {
    int t = t_override.value_or(200);
    if (t < 1) {
      throw InvalidArgumentError("t_override must be at least 1");
    }
    trials = static_cast<std::uint64_t>(t);
  }

  std::vector<std::uint64_t> hit_counts(l.size() + 1, 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<std::uint8_t> hits =
        apply_and_revert(f, ground, l, g, f_g, tau_level, rng);
    for (std::size_t i = 0; i < hits.size(); ++i) hit_counts[i] += hits[i];
  }

  const double pass_bar = (1.0 - eps) * static_cast<double>(trials);
  std::size_t first_low = hit_counts.size();  // sentinel entry is always low
  for (std::size_t i = 0; i < hit_counts.size(); ++i) {
    if (static_cast<double>(hit_counts[i]) < pass_bar) {
      first_low = i + 1;  // 1-based position
      break;
    }
  }
  std::size_t m = first_low - 1;
  if (m == 0) {
    // Every permutation starts with an element clearing tau_level when the
    // filter precondition holds, so this indicates a caller bug.
    throw PreconditionError(
        "calc_sample_size: first draw failed; Filter(l, g, tau) != l");
  }
  return m;
}

std::vector<ElementId> draw_ordered_sample(const IdSet& bucket, std::size_t m,
                                           Rng& rng) {
  if (m > bucket.size()) {
    throw InvalidArgumentError("sample size exceeds bucket size");
  }
  std::vector<ElementId> buf(bucket);
  rng.partial_shuffle(buf, m);
  buf.resize(m);
  return buf;
}

InstanceState::InstanceState(const EvaluationOracle& f,
                             const GroundSet& ground, RunParams params,
                             Rng rng)
    : oracle_(&f),
      ground_(&ground),
      params_(params),
      grid_(params.eps),
      rng_(rng) {
  if (!(params_.tau > 0.0)) {
    throw InvalidArgumentError("run threshold must be positive");
  }
  if (!(params_.eps > 0.0) || !(params_.eps <= 0.1)) {
    throw InvalidArgumentError("eps must lie in (0, 1/10]");
  }
  if (!(params_.eps_del > 0.0) || !(params_.eps_del < params_.eps / 16.0)) {
    throw InvalidArgumentError("eps_del must lie in (0, eps/16)");
  }
  if (params_.sample_n == 0) {
    throw InvalidArgumentError("sample_n must be positive");
  }
  levels_.resize(2);
  last_level_ = 0;
}

void InstanceState::init(const IdSet& v) {
  levels_.assign(2, Level{});
  deleted_.clear();
  last_level_ = 0;
  levels_[0].candidates = v;
  levels_[0].extended = v;
  IdSet first = filter(*oracle_, *ground_, v, levels_[0].chosen,
                       levels_[0].chosen_value, params_.tau);
  levels_[1].candidates = first;
  levels_[1].extended = first;
  reconstruct(1);
}

void InstanceState::insert(ElementId e) {
  ground_->weight(e);  // validates the id
  if (contains_live(e)) {
    throw InvalidArgumentError("insert: element is already live");
  }
  set_erase(deleted_, e);
  set_insert(levels_[0].candidates, e);
  set_insert(levels_[0].extended, e);

  for (int i = 1; i <= last_level_ + 1; ++i) {
    const Level& prev = levels_[i - 1];
    double density = marginal_density(*oracle_, *ground_, e, prev.chosen,
                                      prev.chosen_value);
    if (density < params_.tau) break;
    set_insert(levels_[i].extended, e);
    // Rebuild when the buffered set outgrew the filtered one by half, or
    // when the element reached past the last built level.
    if (i == last_level_ + 1 ||
        2 * levels_[i].extended.size() >= 3 * levels_[i].candidates.size()) {
      reconstruct(i);
      break;
    }
  }
}

void InstanceState::erase(ElementId e) {
  if (!contains_live(e)) {
    throw InvalidArgumentError("erase: element is not live");
  }
  set_insert(deleted_, e);
  for (int i = 1; i <= last_level_; ++i) {
    const Level& lv = levels_[i];
    std::size_t overlap = set_intersection_size(deleted_, lv.bucket);
    if (static_cast<double>(overlap) >=
        params_.eps_del * static_cast<double>(lv.bucket.size())) {
      reconstruct(i);
      break;
    }
  }
}

InstanceState::Solution InstanceState::current_solution() const {
  Solution s;
  s.ids = set_difference(levels_[last_level_].chosen, deleted_);
  s.value = oracle_->evaluate(s.ids);
  s.cost = ground_->cost(s.ids);
  return s;
}

void InstanceState::reconstruct(int from_level) {
  if (from_level < 1 || from_level > last_level_ + 1) {
    throw PreconditionError("reconstruct: level out of range");
  }
  ++reconstructions_;

  levels_.resize(static_cast<std::size_t>(from_level) + 1);
  Level& entry = levels_[from_level];
  entry.candidates = set_difference(entry.extended, deleted_);
  entry.extended = entry.candidates;
  entry.bucket.clear();
  entry.sample.clear();
  entry.chosen.clear();
  entry.additions.clear();
  entry.tau_level = 0.0;
  entry.sample_size = 0;
  entry.bucket_density_index = 0;
  entry.bucket_weight_index = 0;
  entry.chosen_value = 0.0;

  int cur = from_level;
  while (!levels_[cur].candidates.empty()) {
    const Level& prev = levels_[cur - 1];
    Level& lv = levels_[cur];

    BucketMap buckets = bucketize(*oracle_, *ground_, grid_, lv.candidates,
                                  prev.chosen, prev.chosen_value,
                                  params_.tau);
    BucketChoice choice = select_largest_bucket(buckets, params_.tau, grid_);
    lv.bucket = std::move(choice.bucket);
    lv.tau_level = choice.tau_level;
    lv.bucket_density_index = choice.density_index;
    lv.bucket_weight_index = choice.weight_index;

    lv.sample_size = calc_sample_size(
        *oracle_, *ground_, lv.bucket, prev.chosen, prev.chosen_value,
        lv.tau_level, params_.eps, params_.sample_n, rng_,
        params_.theory_mode, params_.t_override);
    lv.sample = draw_ordered_sample(lv.bucket, lv.sample_size, rng_);

    lv.chosen = prev.chosen;
    lv.chosen_value = prev.chosen_value;
    lv.additions.clear();
    for (ElementId e : lv.sample) {
      double gain = marginal_gain(*oracle_, e, lv.chosen, lv.chosen_value);
      double density = gain / ground_->weight(e);
      if (density >= lv.tau_level) {
        set_insert(lv.chosen, e);
        lv.chosen_value += gain;
        lv.additions.push_back({e, density, lv.tau_level, cur});
      }
    }

    IdSet next = filter(*oracle_, *ground_, lv.candidates, lv.chosen,
                        lv.chosen_value, params_.tau);
    Level next_level;
    next_level.candidates = next;
    next_level.extended = std::move(next);
    levels_.push_back(std::move(next_level));
    ++cur;
  }
  last_level_ = cur - 1;

  if (from_level == 1) {
    // Deletion entries for elements no longer tracked at the base carry no
    // information; drop them to bound the ledger.
    IdSet kept;
    kept.reserve(deleted_.size());
    for (ElementId e : deleted_) {
      if (set_contains(levels_[0].extended, e)) kept.push_back(e);
    }
    deleted_ = std::move(kept);
  }
}

}  // namespace dynsc
