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

#include "dynsc/oracle.hpp"

#include <cmath>
#include <utility>

namespace dynsc {

namespace {

constexpr double kContractTolerance = 1e-9;

// Per-thread scratch for coverage evaluation. The stamp array is shared
// across instances in the same thread: a slot counts as marked only when
// it carries the current epoch, so resetting is a single increment.
struct CoverageScratch {
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch = 0;
};

CoverageScratch& scratch() {
  thread_local CoverageScratch s;
  return s;
}

IdSet with_element(const IdSet& a, ElementId v) {
  IdSet out = a;
  set_insert(out, v);
  return out;
}

}  // namespace

ElementId GroundSet::add(const std::string& name, double weight) {
  if (index_.count(name)) {
    throw InvalidArgumentError("duplicate element id: " + name);
  }
  if (!(weight >= 1.0) || !(weight <= rho_) || !std::isfinite(weight)) {
    throw InvalidArgumentError("element " + name +
                               " weight outside [1, rho]");
  }
  ElementId e = static_cast<ElementId>(names_.size());
  names_.push_back(name);
  weights_.push_back(weight);
  index_.emplace(name, e);
  return e;
}

ElementId GroundSet::id_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw InvalidArgumentError("unknown element id: " + name);
  }
  return it->second;
}

const std::string& GroundSet::name_of(ElementId e) const {
  check_id(e);
  return names_[e];
}

double GroundSet::weight(ElementId e) const {
  check_id(e);
  return weights_[e];
}

double GroundSet::cost(std::span<const ElementId> ids) const {
  double total = 0.0;
  for (ElementId e : ids) {
    check_id(e);
    total += weights_[e];
  }
  return total;
}

IdSet GroundSet::all_ids() const {
  IdSet out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = static_cast<ElementId>(i);
  return out;
}

void GroundSet::check_id(ElementId e) const {
  if (e >= names_.size()) {
    throw InvalidArgumentError("element id out of range");
  }
}

CoverageInstance::CoverageInstance(
    GroundSet ground, std::vector<std::vector<std::uint32_t>> covers,
    std::vector<double> item_weights)
    : ground_(std::move(ground)),
      covers_(std::move(covers)),
      item_weights_(std::move(item_weights)) {
  if (covers_.size() != ground_.size()) {
    throw InvalidArgumentError("covers/ground size mismatch");
  }
  for (const auto& cover : covers_) {
    for (std::uint32_t item : cover) {
      if (item >= item_weights_.size()) {
        throw InvalidArgumentError("cover item out of range");
      }
    }
  }
  for (double w : item_weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgumentError("item weight must be non-negative");
    }
  }
}

CoverageInstance CoverageInstance::from_sets(
    double rho, const std::vector<GroundElement>& elements,
    const std::vector<std::vector<std::string>>& covers,
    const std::unordered_map<std::string, double>& item_weights) {
  if (elements.size() != covers.size()) {
    throw InvalidArgumentError("elements/covers size mismatch");
  }
  GroundSet ground(rho);
  std::unordered_map<std::string, std::uint32_t> item_index;
  std::vector<double> weights;
  std::vector<std::vector<std::uint32_t>> interned(covers.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    ground.add(elements[i].id, elements[i].weight);
    interned[i].reserve(covers[i].size());
    for (const std::string& item : covers[i]) {
      auto [it, fresh] =
          item_index.emplace(item, static_cast<std::uint32_t>(weights.size()));
      if (fresh) {
        auto wit = item_weights.find(item);
        weights.push_back(wit == item_weights.end() ? 1.0 : wit->second);
      }
      interned[i].push_back(it->second);
    }
  }
  return CoverageInstance(std::move(ground), std::move(interned),
                          std::move(weights));
}

double CoverageInstance::evaluate(std::span<const ElementId> ids) const {
  CoverageScratch& s = scratch();
  if (s.stamp.size() < item_weights_.size()) {
    s.stamp.resize(item_weights_.size(), 0);
  }
  const std::uint64_t epoch = ++s.epoch;
  double total = 0.0;
  for (ElementId e : ids) {
    if (e >= covers_.size()) {
      throw InvalidArgumentError("unknown element id in query");
    }
    for (std::uint32_t item : covers_[e]) {
      if (s.stamp[item] != epoch) {
        s.stamp[item] = epoch;
        total += item_weights_[item];
      }
    }
  }
  return total;
}

const std::vector<std::uint32_t>& CoverageInstance::cover_of(
    ElementId e) const {
  if (e >= covers_.size()) {
    throw InvalidArgumentError("element id out of range");
  }
  return covers_[e];
}

double CoverageInstance::item_weight(std::uint32_t item) const {
  if (item >= item_weights_.size()) {
    throw InvalidArgumentError("item index out of range");
  }
  return item_weights_[item];
}

double marginal_gain(const EvaluationOracle& f, ElementId e,
                     std::span<const ElementId> a_sorted, double f_a) {
  thread_local IdSet with_e;
  with_e.clear();
  with_e.reserve(a_sorted.size() + 1);
  bool placed = false;
  for (ElementId a : a_sorted) {
    if (!placed && e < a) {
      with_e.push_back(e);
      placed = true;
    }
    if (a == e) placed = true;  // e already in A; query equals f(A)
    with_e.push_back(a);
  }
  if (!placed) with_e.push_back(e);
  double gain = f.evaluate(with_e) - f_a;
  if (gain < -kContractTolerance) {
    throw OracleContractError("negative marginal gain; oracle not monotone");
  }
  return gain < 0.0 ? 0.0 : gain;
}

double marginal_density(const EvaluationOracle& f, const GroundSet& ground,
                        ElementId e, std::span<const ElementId> a_sorted,
                        double f_a) {
  return marginal_gain(f, e, a_sorted, f_a) / ground.weight(e);
}

SelfTestReport oracle_self_test(const EvaluationOracle& f, std::size_t trials,
                                std::uint64_t rng_seed) {
  SelfTestReport report;
  report.trials = trials;
  if (trials == 0) {
    report.vacuous = true;
    return report;
  }

  const IdSet empty;
  double f_empty = f.evaluate(empty);
  if (std::abs(f_empty) > kContractTolerance) {
    report.violations.push_back(
        {"normalized", "f(empty) = " + std::to_string(f_empty)});
  }

  Rng rng = make_substream(rng_seed, RngDomain::kSelfTest, 0);
  const std::size_t n = f.ground_size();
  for (std::size_t trial = 0; trial < trials && n > 0; ++trial) {
    IdSet b;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.next_double() < 0.5) b.push_back(static_cast<ElementId>(i));
    }
    IdSet a;
    for (ElementId e : b) {
      if (rng.next_double() < 0.5) a.push_back(e);
    }
    IdSet outside;
    for (std::size_t i = 0; i < n; ++i) {
      ElementId e = static_cast<ElementId>(i);
      if (!set_contains(b, e)) outside.push_back(e);
    }

    double f_a = f.evaluate(a);
    double f_b = f.evaluate(b);
    if (f_a > f_b + kContractTolerance) {
      report.violations.push_back(
          {"monotone", "f(A) > f(B) for A subset of B (trial " +
                           std::to_string(trial) + ")"});
      break;
    }
    if (!outside.empty()) {
      ElementId v = outside[rng.below(outside.size())];
      double gain_a = f.evaluate(with_element(a, v)) - f_a;
      double gain_b = f.evaluate(with_element(b, v)) - f_b;
      if (gain_a < gain_b - kContractTolerance) {
        report.violations.push_back(
            {"submodular", "marginal grows with larger context (trial " +
                               std::to_string(trial) + ")"});
        break;
      }
    }
  }
  return report;
}

}  // namespace dynsc
