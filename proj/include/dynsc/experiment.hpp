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

#ifndef DYNSC_EXPERIMENT_HPP_
#define DYNSC_EXPERIMENT_HPP_

#include <optional>
#include <string>

#include "dynsc/runs.hpp"
#include "dynsc/stream.hpp"

namespace dynsc {

struct ExperimentConfig {
  double eps = 0.05;
  double eps_del = -1.0;      // negative: eps / 20
  std::size_t n_max = 0;      // zero: ground-set size
  std::uint64_t seed = 0;
  bool theory_mode = false;
  int t_override = 200;
  bool check = false;         // run invariant checkers after every update
  std::size_t retrieve_every = 1;
  double qualify_factor = 1.0;
};

// One line of the metrics stream. Solution fields are absent on updates
// where retrieval was skipped by the cadence.
struct MetricsRecord {
  std::uint64_t t = 0;
  std::string op;  // "+ id" or "- id", as in the stream file
  std::optional<double> f_v;
  std::optional<int> chosen_index;
  std::optional<std::uint64_t> solution_size;
  std::optional<double> solution_cost;
  std::optional<double> f_solution;
  std::optional<double> coverage_ratio;
  std::uint64_t oracle_calls_cumulative = 0;
  std::uint64_t reconstructions_triggered = 0;  // by this update
};

struct ExperimentSummary {
  std::uint64_t updates = 0;
  std::uint64_t oracle_calls = 0;
  double amortized_oracle_calls = 0.0;
  std::uint64_t reconstructions = 0;
  std::uint64_t runs_instantiated = 0;
  double worst_coverage_ratio = 1.0;
  double mean_coverage_ratio = 1.0;
  std::optional<double> final_solution_cost;
  std::optional<double> cost_ratio_vs_greedy;  // greedy at (1 - eps) coverage
  std::optional<double> cost_ratio_vs_brute;   // exact cover, small V only
  bool invariants_ok = true;
  std::string first_violation;
};

struct ExperimentResult {
  std::vector<MetricsRecord> metrics;
  ExperimentSummary summary;
};

// Replays a stream through a run pool over the instance's oracle, with a
// counting wrapper as the library's complexity meter. Invariant checks,
// when enabled, query the unwrapped oracle so they do not distort the
// metric. Fully deterministic for fixed inputs and seed.
ExperimentResult run_experiment(const CoverageInstance& instance,
                                const std::vector<UpdateOp>& stream,
                                const ExperimentConfig& config);

// Fixed key order, one record per line; bit-stable across reruns.
std::string to_jsonl(const std::vector<MetricsRecord>& records);
std::string to_csv(const std::vector<MetricsRecord>& records);
std::string summary_json(const ExperimentSummary& summary);

enum class ReportFormat { kJsonl, kCsv };
void write_report(const std::vector<MetricsRecord>& records,
                  ReportFormat format, const std::string& path);

}  // namespace dynsc

#endif  // DYNSC_EXPERIMENT_HPP_
