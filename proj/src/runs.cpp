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

#include "dynsc/runs.hpp"

#include <cmath>
#include <limits>

namespace dynsc {

void PoolConfig::validate() const {
  // The model wants eps below 1/10; the boundary value itself is accepted
  // since every guarantee still holds there with room to spare.
  if (!(eps > 0.0) || !(eps <= 0.1)) {
    throw InvalidArgumentError("eps must lie in (0, 1/10]");
  }
  double ed = effective_eps_del();
  if (!(ed > 0.0) || !(ed < eps / 16.0)) {
    throw InvalidArgumentError("eps_del must lie in (0, eps/16)");
  }
  if (n_max == 0) {
    throw InvalidArgumentError("n_max is required and must be positive");
  }
  if (!(rho >= 1.0)) {
    throw InvalidArgumentError("rho must be at least 1");
  }
  if (!theory_mode && t_override < 1) {
    throw InvalidArgumentError("t_override must be at least 1");
  }
}

RunPool::RunPool(const EvaluationOracle& f, const GroundSet& ground,
                 PoolConfig config)
    : oracle_(&f), ground_(&ground), config_(config), grid_(config.eps) {
  config_.validate();
  density_cache_.assign(ground.size(),
                        std::numeric_limits<double>::quiet_NaN());
}

double RunPool::unit_density(ElementId e) {
  double& slot = density_cache_.at(e);
  if (std::isnan(slot)) {
    IdSet single{e};
    slot = oracle_->evaluate(single) / ground_->weight(e);
  }
  return slot;
}

std::optional<std::pair<int, int>> RunPool::interval_of(double density) const {
  if (!(density > 0.0)) return std::nullopt;
  double n_rho = static_cast<double>(config_.n_max) * config_.rho;
  int lo = grid_.ceil_log(density * config_.eps /
                          (n_rho * (1.0 + config_.eps)));
  int hi = grid_.floor_log(density);
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::optional<std::pair<int, int>> RunPool::index_interval(ElementId e) {
  return interval_of(unit_density(e));
}

InstanceState& RunPool::run_at(int index) {
  auto it = runs_.find(index);
  if (it != runs_.end()) return it->second;

  RunParams params;
  params.tau = grid_.power(index);
  params.eps = config_.eps;
  params.eps_del = config_.effective_eps_del();
  params.sample_n = config_.n_max;
  params.theory_mode = config_.theory_mode;
  params.t_override = config_.t_override;
  Rng rng = make_substream(config_.seed, RngDomain::kThresholdRun,
                           static_cast<std::uint64_t>(
                               static_cast<std::int64_t>(index)));
  it = runs_.emplace(index, InstanceState(*oracle_, *ground_, params, rng))
           .first;

  // A fresh run starts from the slice of the live set it is responsible
  // for; all unit densities are already cached, so no oracle calls here.
  IdSet view;
  for (ElementId v : live_) {
    auto interval = interval_of(density_cache_[v]);
    if (interval && interval->first <= index && index <= interval->second) {
      view.push_back(v);
    }
  }
  it->second.init(view);
  return it->second;
}

void RunPool::insert(ElementId e) {
  ground_->weight(e);  // validates the id
  if (set_contains(live_, e)) {
    throw InvalidArgumentError("insert: element is already live");
  }
  set_insert(live_, e);
  last_touched_.clear();
  auto interval = index_interval(e);
  if (!interval) return;
  for (int i = interval->first; i <= interval->second; ++i) {
    last_touched_.push_back(i);
    bool existed = runs_.count(i) != 0;
    InstanceState& run = run_at(i);
    // A lazily created run initialized itself from the live set, which
    // already includes e; only pre-existing runs need the explicit insert.
    if (existed) run.insert(e);
  }
}

void RunPool::erase(ElementId e) {
  if (!set_contains(live_, e)) {
    throw InvalidArgumentError("erase: element is not live");
  }
  set_erase(live_, e);
  last_touched_.clear();
  auto interval = index_interval(e);
  if (!interval) return;
  for (int i = interval->first; i <= interval->second; ++i) {
    last_touched_.push_back(i);
    auto it = runs_.find(i);
    if (it == runs_.end()) {
      throw InternalInvariantError(
          "erase routed to a run that was never instantiated");
    }
    it->second.erase(e);
  }
}

std::pair<int, int> RunPool::retrieval_interval(double f_v) const {
  if (live_.empty() || !(f_v > 0.0)) {
    throw PreconditionError("retrieval interval needs live elements");
  }
  double lo_arg = f_v * config_.eps /
                  (static_cast<double>(live_.size()) * config_.rho);
  int lo = grid_.floor_log(lo_arg);
  int hi = grid_.floor_log(f_v * config_.eps);
  return {lo, hi};
}

std::optional<int> pick_best_run(const std::vector<RetrievalCandidate>& c,
                                 double f_v, double eps,
                                 double qualify_factor) {
  std::optional<int> best;
  double best_cost = 0.0;
  const double bar = (1.0 - qualify_factor * eps) * f_v;
  for (const RetrievalCandidate& cand : c) {
    if (cand.chosen_value < bar) continue;
    if (!best || cand.cost < best_cost ||
        (cand.cost == best_cost && cand.index < *best)) {
      best = cand.index;
      best_cost = cand.cost;
    }
  }
  return best;
}

RunPool::Retrieved RunPool::retrieve() const {
  Retrieved out;
  if (live_.empty()) return out;
  out.f_v = oracle_->evaluate(live_);
  if (!(out.f_v > 0.0)) return out;

  auto [lo, hi] = retrieval_interval(out.f_v);
  std::vector<RetrievalCandidate> candidates;
  for (auto it = runs_.lower_bound(lo); it != runs_.end() && it->first <= hi;
       ++it) {
    const InstanceState& run = it->second;
    const Level& top = run.levels()[run.last_level()];
    IdSet solution = set_difference(top.chosen, run.deleted());
    candidates.push_back(
        {it->first, top.chosen_value, ground_->cost(solution)});
  }
  std::optional<int> pick = pick_best_run(candidates, out.f_v, config_.eps,
                                          config_.qualify_factor);
  if (!pick) {
    throw InternalInvariantError(
        "no qualifying run in the retrieval interval");
  }
  const InstanceState& chosen = runs_.at(*pick);
  out.ids = set_difference(chosen.levels()[chosen.last_level()].chosen,
                           chosen.deleted());
  out.value = oracle_->evaluate(out.ids);
  out.cost = ground_->cost(out.ids);
  out.index = pick;
  return out;
}

std::uint64_t RunPool::reconstruction_count() const {
  std::uint64_t total = 0;
  for (const auto& [index, run] : runs_) total += run.reconstruction_count();
  return total;
}

}  // namespace dynsc
