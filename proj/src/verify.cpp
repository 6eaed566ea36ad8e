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

#include "dynsc/verify.hpp"

#include <cmath>
#include <sstream>

namespace dynsc {

namespace {

constexpr double kCostSlack = 1e-9;

std::string describe_set(const IdSet& s, std::size_t limit = 8) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size() && i < limit; ++i) {
    if (i) out << ",";
    out << s[i];
  }
  if (s.size() > limit) out << ",...";
  out << "}";
  return out.str();
}

}  // namespace

LevelsSnapshot snapshot_of(const InstanceState& run) {
  LevelsSnapshot snap;
  snap.tau = run.params().tau;
  snap.eps_del = run.params().eps_del;
  snap.last_level = run.last_level();
  snap.deleted = run.deleted();
  snap.levels = run.levels();
  return snap;
}

InvariantReport check_level_invariants(const EvaluationOracle& f,
                                       const GroundSet& ground,
                                       const LevelsSnapshot& snap) {
  InvariantReport report;
  const int t = snap.last_level;

  // live view of level i, recomputed from scratch
  auto live_view = [&](int i) {
    return set_difference(snap.levels[static_cast<std::size_t>(i)].extended,
                          snap.deleted);
  };

  for (int i = 1; i <= t + 1; ++i) {
    const Level& prev = snap.levels[static_cast<std::size_t>(i - 1)];
    double f_prev = f.evaluate(prev.chosen);
    IdSet expected =
        filter(f, ground, live_view(i - 1), prev.chosen, f_prev, snap.tau);
    IdSet actual = live_view(i);
    if (actual != expected) {
      report.violations.push_back(
          {"filter", i,
           "live view " + describe_set(actual) + " != refiltered " +
               describe_set(expected)});
    }
  }

  for (int i = 1; i <= t + 1; ++i) {
    const Level& lv = snap.levels[static_cast<std::size_t>(i)];
    const Level& prev = snap.levels[static_cast<std::size_t>(i - 1)];
    if (!set_is_subset(lv.extended, prev.extended)) {
      report.violations.push_back(
          {"subset", i, "extended set is not contained in its parent"});
    }
  }

  for (int i = 1; i <= t; ++i) {
    const Level& lv = snap.levels[static_cast<std::size_t>(i)];
    double overlap = static_cast<double>(
        set_intersection_size(snap.deleted, lv.bucket));
    if (overlap > snap.eps_del * static_cast<double>(lv.bucket.size())) {
      report.violations.push_back(
          {"deviation", i, "deleted fraction of bucket exceeds eps_del"});
    }
    if (2 * lv.extended.size() > 3 * lv.candidates.size()) {
      report.violations.push_back(
          {"deviation", i, "extended set larger than 3/2 of filtered set"});
    }
  }

  for (int i = 1; i <= t; ++i) {
    const Level& lv = snap.levels[static_cast<std::size_t>(i)];
    if (lv.candidates.empty() || lv.extended.empty() ||
        live_view(i).empty()) {
      report.violations.push_back(
          {"stopping", i, "built level is empty before the last level"});
    }
  }
  const Level& sentinel = snap.levels[static_cast<std::size_t>(t + 1)];
  if (!sentinel.candidates.empty() || !sentinel.extended.empty() ||
      !live_view(t + 1).empty()) {
    report.violations.push_back(
        {"stopping", t + 1, "terminator level is not empty"});
  }
  return report;
}

InvariantReport check_level_invariants(const EvaluationOracle& f,
                                       const GroundSet& ground,
                                       const InstanceState& run) {
  return check_level_invariants(f, ground, snapshot_of(run));
}

std::vector<double> estimate_expected_x(const EvaluationOracle& f,
                                        const GroundSet& ground,
                                        const IdSet& l, const IdSet& g,
                                        double f_g, double tau_level,
                                        std::size_t trials, Rng& rng) {
  if (trials == 0) {
    throw InvalidArgumentError("estimate_expected_x needs trials >= 1");
  }
  std::vector<double> means(l.size() + 1, 0.0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<std::uint8_t> hits =
        apply_and_revert(f, ground, l, g, f_g, tau_level, rng);
    for (std::size_t i = 0; i < hits.size(); ++i) means[i] += hits[i];
  }
  for (double& m : means) m /= static_cast<double>(trials);
  return means;
}

FrozenHistory freeze_presample(const InstanceState& run, int level) {
  if (level < 1 || level > run.last_level()) {
    throw PreconditionError("freeze_presample: level out of range");
  }
  const Level& lv = run.levels()[static_cast<std::size_t>(level)];
  return FrozenHistory{lv.bucket, lv.sample_size};
}

UniformityReport uniformity_test(const FrozenHistory& history,
                                 std::size_t repeats, Rng& rng) {
  UniformityReport report;
  report.repeats = repeats;
  const std::size_t b = history.bucket.size();
  const std::size_t m = history.sample_size;
  if (b == 0 || m == 0 || m > b) {
    throw InvalidArgumentError("uniformity_test: degenerate frozen history");
  }
  report.expected = static_cast<double>(m) / static_cast<double>(b);
  report.band = 4.0 * std::sqrt(report.expected * (1.0 - report.expected) /
                                static_cast<double>(repeats));

  std::vector<std::size_t> inclusion(b, 0);
  for (std::size_t r = 0; r < repeats; ++r) {
    std::vector<ElementId> sample =
        draw_ordered_sample(history.bucket, m, rng);
    for (ElementId e : sample) {
      std::size_t pos = static_cast<std::size_t>(
          std::lower_bound(history.bucket.begin(), history.bucket.end(), e) -
          history.bucket.begin());
      ++inclusion[pos];
    }
  }

  report.frequency.resize(b);
  report.pass = true;
  const double expected_count =
      report.expected * static_cast<double>(repeats);
  for (std::size_t i = 0; i < b; ++i) {
    report.frequency[i] =
        static_cast<double>(inclusion[i]) / static_cast<double>(repeats);
    double deviation = std::abs(report.frequency[i] - report.expected);
    if (deviation > report.band) report.pass = false;
    double diff = static_cast<double>(inclusion[i]) - expected_count;
    report.chi_square += diff * diff / expected_count;
  }
  return report;
}

CostChainReport audit_cost_chain(const EvaluationOracle& f,
                                 const GroundSet& ground,
                                 const LevelsSnapshot& snap) {
  CostChainReport report;
  for (int i = 1; i <= snap.last_level; ++i) {
    const Level& lv = snap.levels[static_cast<std::size_t>(i)];
    for (const AdditionRecord& add : lv.additions) {
      if (!(add.density >= add.tau_level) ||
          !(add.tau_level >= snap.tau)) {
        report.ok = false;
        std::ostringstream out;
        out << "addition of element " << add.id << " at level " << i
            << " logged density " << add.density
            << " below its level threshold " << add.tau_level;
        report.detail = out.str();
        return report;
      }
    }
  }

  const Level& top = snap.levels[static_cast<std::size_t>(snap.last_level)];
  double total_weight = ground.cost(top.chosen);
  double value = f.evaluate(top.chosen);
  if (total_weight > value / snap.tau + kCostSlack) {
    report.ok = false;
    std::ostringstream out;
    out << "solution weight " << total_weight << " exceeds f/tau = "
        << value / snap.tau;
    report.detail = out.str();
  }
  return report;
}

CostChainReport audit_cost_chain(const EvaluationOracle& f,
                                 const GroundSet& ground,
                                 const InstanceState& run) {
  return audit_cost_chain(f, ground, snapshot_of(run));
}

}  // namespace dynsc
