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

#ifndef DYNSC_ORACLE_HPP_
#define DYNSC_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynsc/common.hpp"
#include "dynsc/rng.hpp"

namespace dynsc {

// An element of the ground set as it appears at the I/O boundary.
struct GroundElement {
  std::string id;
  double weight = 1.0;
};

// The weighted ground set. External string ids are interned to dense
// ElementId handles at load; weights are validated against [1, rho].
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(double rho) : rho_(rho) {
    if (!(rho >= 1.0)) throw InvalidArgumentError("rho must be >= 1");
  }

  ElementId add(const std::string& name, double weight);

  std::size_t size() const { return names_.size(); }
  double rho() const { return rho_; }

  ElementId id_of(const std::string& name) const;
  bool knows(const std::string& name) const {
    return index_.count(name) != 0;
  }
  const std::string& name_of(ElementId e) const;
  double weight(ElementId e) const;

  // Sum of weights; cost(empty) = 0.
  double cost(std::span<const ElementId> ids) const;

  IdSet all_ids() const;

 private:
  void check_id(ElementId e) const;

  std::vector<std::string> names_;
  std::vector<double> weights_;
  std::unordered_map<std::string, ElementId> index_;
  double rho_ = 1.0;
};

// Monotone, normalized, submodular set function accessed through set
// queries. Implementations must be pure: evaluate may keep internal
// scratch but its result depends only on the argument, and concurrent
// readers are safe.
class EvaluationOracle {
 public:
  virtual ~EvaluationOracle() = default;

  // f(S). Ids may be in any order but must be distinct and known.
  virtual double evaluate(std::span<const ElementId> ids) const = 0;

  virtual std::size_t ground_size() const = 0;
};

// Wraps an oracle and counts evaluations; the unit of running time for
// everything in this library. The counter is atomic so a shared oracle can
// be read from several runs at once; it only ever increases.
class CountingOracle final : public EvaluationOracle {
 public:
  explicit CountingOracle(const EvaluationOracle& inner) : inner_(&inner) {}

  double evaluate(std::span<const ElementId> ids) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_->evaluate(ids);
  }

  std::size_t ground_size() const override { return inner_->ground_size(); }

  std::uint64_t call_count() const {
    return calls_.load(std::memory_order_relaxed);
  }

  const EvaluationOracle& inner() const { return *inner_; }

 private:
  const EvaluationOracle* inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Weighted coverage function: each element covers a set of universe items
// and f(S) is the total weight of the union of covered items. Items are
// interned to dense indices at construction; evaluate runs in
// O(sum of cover sizes) using an epoch-stamped scratch array.
class CoverageInstance final : public EvaluationOracle {
 public:
  CoverageInstance(GroundSet ground,
                   std::vector<std::vector<std::uint32_t>> covers,
                   std::vector<double> item_weights);

  // Builder used by loaders and tests: covers maps element name ->
  // covered item names; item_weights (optional) maps item name -> weight.
  static CoverageInstance from_sets(
      double rho, const std::vector<GroundElement>& elements,
      const std::vector<std::vector<std::string>>& covers,
      const std::unordered_map<std::string, double>& item_weights = {});

  double evaluate(std::span<const ElementId> ids) const override;
  std::size_t ground_size() const override { return ground_.size(); }

  const GroundSet& ground() const { return ground_; }
  std::size_t item_count() const { return item_weights_.size(); }
  double item_weight(std::uint32_t item) const;
  const std::vector<std::uint32_t>& cover_of(ElementId e) const;

 private:
  GroundSet ground_;
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<double> item_weights_;
};

// f(A + e) - f(A) with exactly one oracle call against the caller-cached
// f(A). Zero when e is already in A. Throws OracleContractError if the
// oracle reports a negative marginal beyond rounding noise.
double marginal_gain(const EvaluationOracle& f, ElementId e,
                     std::span<const ElementId> a_sorted, double f_a);

// marginal_gain / w(e); the greedy selection criterion.
double marginal_density(const EvaluationOracle& f, const GroundSet& ground,
                        ElementId e, std::span<const ElementId> a_sorted,
                        double f_a);

// Randomized spot check of the oracle contract: normalization, monotone
// chains, diminishing marginals. Failures are report entries, not throws.
struct SelfTestReport {
  struct Violation {
    std::string property;  // "normalized" | "monotone" | "submodular"
    std::string detail;
  };
  std::size_t trials = 0;
  std::vector<Violation> violations;
  bool vacuous = false;  // trials == 0
  bool passed() const { return violations.empty(); }
};

SelfTestReport oracle_self_test(const EvaluationOracle& f, std::size_t trials,
                                std::uint64_t rng_seed);

}  // namespace dynsc

#endif  // DYNSC_ORACLE_HPP_
