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

#include "dynsc/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dynsc/baselines.hpp"
#include "dynsc/verify.hpp"
#include "json.hpp"

namespace dynsc {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip decimal form; keeps emitted files byte-stable.
std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

void append_json(ordered_json& j, const char* key,
                 const std::optional<double>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

PoolConfig pool_config_from(const ExperimentConfig& config,
                            const CoverageInstance& instance) {
  PoolConfig pc;
  pc.eps = config.eps;
  pc.eps_del = config.eps_del;
  pc.n_max = config.n_max == 0 ? instance.ground().size() : config.n_max;
  pc.rho = instance.ground().rho();
  pc.seed = config.seed;
  pc.theory_mode = config.theory_mode;
  pc.t_override = config.t_override;
  pc.qualify_factor = config.qualify_factor;
  return pc;
}

}  // namespace

ExperimentResult run_experiment(const CoverageInstance& instance,
                                const std::vector<UpdateOp>& stream,
                                const ExperimentConfig& config) {
  validate_stream(stream);
  const GroundSet& ground = instance.ground();

  std::size_t distinct = 0;
  {
    IdSet seen;
    for (const UpdateOp& op : stream) {
      seen.push_back(ground.id_of(op.id));  // validates every stream id
    }
    distinct = make_set(std::move(seen)).size();
  }
  PoolConfig pc = pool_config_from(config, instance);
  if (pc.n_max < distinct) {
    throw InvalidArgumentError(
        "n_max is smaller than the stream's distinct id count");
  }
  if (config.retrieve_every == 0) {
    throw InvalidArgumentError("retrieve_every must be at least 1");
  }

  CountingOracle counted(instance);
  RunPool pool(counted, ground, pc);

  ExperimentResult result;
  result.metrics.reserve(stream.size());
  double coverage_sum = 0.0;
  std::uint64_t coverage_samples = 0;
  std::uint64_t reconstructions_before = 0;

  for (std::size_t step = 0; step < stream.size(); ++step) {
    const UpdateOp& op = stream[step];
    ElementId e = ground.id_of(op.id);
    if (op.kind == UpdateOp::Kind::kInsert) {
      pool.insert(e);
    } else {
      pool.erase(e);
    }

    MetricsRecord rec;
    rec.t = op.t;
    rec.op = (op.kind == UpdateOp::Kind::kInsert ? "+ " : "- ") + op.id;
    std::uint64_t reconstructions_now = pool.reconstruction_count();
    rec.reconstructions_triggered =
        reconstructions_now - reconstructions_before;
    reconstructions_before = reconstructions_now;

    if (step % config.retrieve_every == 0 || step + 1 == stream.size()) {
      RunPool::Retrieved got = pool.retrieve();
      rec.f_v = got.f_v;
      rec.chosen_index = got.index;
      rec.solution_size = got.ids.size();
      rec.solution_cost = got.cost;
      rec.f_solution = got.value;
      double ratio = got.f_v > 0.0 ? got.value / got.f_v : 1.0;
      rec.coverage_ratio = ratio;
      coverage_sum += ratio;
      ++coverage_samples;
      result.summary.worst_coverage_ratio =
          std::min(result.summary.worst_coverage_ratio, ratio);
      result.summary.final_solution_cost = got.cost;
    }

    if (config.check && result.summary.invariants_ok) {
      for (int index : pool.last_touched()) {
        const InstanceState& run = pool.runs().at(index);
        InvariantReport inv = check_level_invariants(instance, ground, run);
        CostChainReport chain = audit_cost_chain(instance, ground, run);
        if (!inv.ok() || !chain.ok) {
          result.summary.invariants_ok = false;
          std::ostringstream out;
          out << "t=" << op.t << " run=" << index << ": ";
          if (!inv.ok()) {
            out << inv.violations.front().invariant << " invariant at level "
                << inv.violations.front().level << " ("
                << inv.violations.front().detail << ")";
          } else {
            out << chain.detail;
          }
          result.summary.first_violation = out.str();
          break;
        }
      }
    }

    rec.oracle_calls_cumulative = counted.call_count();
    result.metrics.push_back(std::move(rec));
  }

  ExperimentSummary& summary = result.summary;
  summary.updates = stream.size();
  summary.oracle_calls = counted.call_count();
  summary.amortized_oracle_calls =
      stream.empty() ? 0.0
                     : static_cast<double>(summary.oracle_calls) /
                           static_cast<double>(stream.size());
  summary.reconstructions = pool.reconstruction_count();
  summary.runs_instantiated = pool.runs().size();
  if (coverage_samples > 0) {
    summary.mean_coverage_ratio =
        coverage_sum / static_cast<double>(coverage_samples);
  }

  // Quality yardsticks against the final live set; these run on the raw
  // oracle so they stay off the algorithm's query meter.
  const IdSet& live = pool.live();
  if (!live.empty() && summary.final_solution_cost) {
    IdSet greedy =
        greedy_cover(instance, ground, live, 1.0 - config.eps);
    double greedy_cost = ground.cost(greedy);
    if (greedy_cost > 0.0) {
      summary.cost_ratio_vs_greedy =
          *summary.final_solution_cost / greedy_cost;
    }
    if (live.size() <= 16) {
      BruteForceResult opt = brute_force_opt(instance, ground, live, 1.0);
      if (opt.cost > 0.0) {
        summary.cost_ratio_vs_brute =
            *summary.final_solution_cost / opt.cost;
      }
    }
  }
  return result;
}

std::string to_jsonl(const std::vector<MetricsRecord>& records) {
  std::ostringstream out;
  for (const MetricsRecord& rec : records) {
    ordered_json j;
    j["t"] = rec.t;
    j["op"] = rec.op;
    append_json(j, "f_v", rec.f_v);
    if (rec.chosen_index) {
      j["chosen_index"] = *rec.chosen_index;
    } else {
      j["chosen_index"] = nullptr;
    }
    if (rec.solution_size) {
      j["solution_size"] = *rec.solution_size;
    } else {
      j["solution_size"] = nullptr;
    }
    append_json(j, "solution_cost", rec.solution_cost);
    append_json(j, "f_solution", rec.f_solution);
    append_json(j, "coverage_ratio", rec.coverage_ratio);
    j["oracle_calls_cumulative"] = rec.oracle_calls_cumulative;
    j["reconstructions_triggered"] = rec.reconstructions_triggered;
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string to_csv(const std::vector<MetricsRecord>& records) {
  std::ostringstream out;
  out << "t,op,f_v,chosen_index,solution_size,solution_cost,f_solution,"
         "coverage_ratio,oracle_calls_cumulative,reconstructions_triggered\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const MetricsRecord& rec : records) {
    out << rec.t << "," << rec.op << "," << cell(rec.f_v) << ",";
    if (rec.chosen_index) out << *rec.chosen_index;
    out << ",";
    if (rec.solution_size) out << *rec.solution_size;
    out << "," << cell(rec.solution_cost) << "," << cell(rec.f_solution)
        << "," << cell(rec.coverage_ratio) << ","
        << rec.oracle_calls_cumulative << ","
        << rec.reconstructions_triggered << "\n";
  }
  return out.str();
}

std::string summary_json(const ExperimentSummary& s) {
  ordered_json j;
  j["updates"] = s.updates;
  j["oracle_calls"] = s.oracle_calls;
  j["amortized_oracle_calls"] = s.amortized_oracle_calls;
  j["reconstructions"] = s.reconstructions;
  j["runs_instantiated"] = s.runs_instantiated;
  j["worst_coverage_ratio"] = s.worst_coverage_ratio;
  j["mean_coverage_ratio"] = s.mean_coverage_ratio;
  append_json(j, "final_solution_cost", s.final_solution_cost);
  append_json(j, "cost_ratio_vs_greedy", s.cost_ratio_vs_greedy);
  append_json(j, "cost_ratio_vs_brute", s.cost_ratio_vs_brute);
  j["invariants_ok"] = s.invariants_ok;
  j["first_violation"] = s.first_violation;
  return j.dump();
}

void write_report(const std::vector<MetricsRecord>& records,
                  ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open report file for write: " + path);
  out << (format == ReportFormat::kJsonl ? to_jsonl(records)
                                         : to_csv(records));
  if (!out) throw IoError("error writing report file: " + path);
}

}  // namespace dynsc
