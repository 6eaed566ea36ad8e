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

// dynsc: maintain an approximately minimum-cost submodular cover under a
// stream of element insertions and deletions.
//
//   dynsc run        replay a stream, emit per-update metrics
//   dynsc gen-stream generate a synthetic update stream
//   dynsc baseline   run a static solver (greedy / brute / static pass)
//   dynsc verify     replay with invariant checks after every update
//
// Exit codes: 0 ok, 1 usage, 2 invariant violation, 3 I/O failure.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dynsc/baselines.hpp"
#include "dynsc/experiment.hpp"
#include "dynsc/instance_io.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

struct RunOptions {
  std::string instance_path;
  std::string stream_path;
  std::string out_path;
  std::string mode = "practical";
  double eps = 0.05;
  double eps_del = -1.0;
  std::size_t n_max = 0;
  std::uint64_t seed = 0;
  int t_override = 200;
  bool check = false;
  std::size_t retrieve_every = 1;
};

dynsc::ExperimentConfig to_config(const RunOptions& opt) {
  dynsc::ExperimentConfig config;
  config.eps = opt.eps;
  config.eps_del = opt.eps_del;
  config.n_max = opt.n_max;
  config.seed = opt.seed;
  config.theory_mode = opt.mode == "theory";
  config.t_override = opt.t_override;
  config.check = opt.check;
  config.retrieve_every = opt.retrieve_every;
  return config;
}

int do_run(const RunOptions& opt, bool force_check) {
  dynsc::CoverageInstance instance = dynsc::load_instance(opt.instance_path);
  std::vector<dynsc::UpdateOp> stream = dynsc::load_stream(opt.stream_path);
  dynsc::ExperimentConfig config = to_config(opt);
  if (force_check) config.check = true;
  if (config.theory_mode) {
    std::cerr << "note: theory mode draws the full concentration-bound "
                 "trial count per sample-size estimate; expect it to be "
                 "slow beyond toy instances\n";
  }
  dynsc::ExperimentResult result = run_experiment(instance, stream, config);
  if (!opt.out_path.empty()) {
    dynsc::ReportFormat format =
        opt.out_path.size() >= 4 &&
                opt.out_path.substr(opt.out_path.size() - 4) == ".csv"
            ? dynsc::ReportFormat::kCsv
            : dynsc::ReportFormat::kJsonl;
    dynsc::write_report(result.metrics, format, opt.out_path);
  }
  std::cout << dynsc::summary_json(result.summary) << "\n";
  if (config.check && !result.summary.invariants_ok) {
    std::cerr << "invariant violation: " << result.summary.first_violation
              << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int do_baseline(const std::string& instance_path, const std::string& algo,
                double tau, double target_fraction) {
  dynsc::CoverageInstance instance = dynsc::load_instance(instance_path);
  const dynsc::GroundSet& ground = instance.ground();
  dynsc::IdSet v = ground.all_ids();

  dynsc::IdSet solution;
  if (algo == "greedy") {
    solution = dynsc::greedy_cover(instance, ground, v, target_fraction);
  } else if (algo == "brute") {
    solution = dynsc::brute_force_opt(instance, ground, v, target_fraction).ids;
  } else if (algo == "static") {
    solution = dynsc::static_threshold_cover(instance, ground, v, tau);
  } else {
    std::cerr << "unknown baseline algorithm: " << algo << "\n";
    return kExitUsage;
  }

  nlohmann::ordered_json out;
  out["algo"] = algo;
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (dynsc::ElementId e : solution) ids.push_back(ground.name_of(e));
  out["solution"] = ids;
  out["cost"] = ground.cost(solution);
  out["f_solution"] = instance.evaluate(solution);
  out["f_ground"] = instance.evaluate(v);
  std::cout << out.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic weighted submodular cover"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "replay a stream, emit metrics");
  run->add_option("--instance", run_opt.instance_path, "instance JSON file")
      ->required();
  run->add_option("--stream", run_opt.stream_path, "update stream file")
      ->required();
  run->add_option("--epsilon", run_opt.eps, "accuracy parameter, in (0,0.1)")
      ->required();
  run->add_option("--eps-del", run_opt.eps_del,
                  "deletion tolerance, in (0, eps/16); default eps/20");
  run->add_option("--n-max", run_opt.n_max,
                  "ground-set size bound; default: instance size");
  run->add_option("--seed", run_opt.seed, "random seed");
  run->add_option("--mode", run_opt.mode, "theory|practical")
      ->check(CLI::IsMember({"theory", "practical"}));
  run->add_option("--t-override", run_opt.t_override,
                  "simulation trials in practical mode");
  run->add_flag("--check", run_opt.check,
                "verify invariants after every update");
  run->add_option("--retrieve-every", run_opt.retrieve_every,
                  "retrieve the solution every k-th update");
  run->add_option("--out", run_opt.out_path,
                  "metrics output (.jsonl or .csv)");

  std::string gen_kind = "random_churn";
  dynsc::StreamGenParams gen_params;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_instance;
  CLI::App* gen = app.add_subcommand("gen-stream", "generate a stream");
  gen->add_option("--kind", gen_kind,
                  "insert_only|sliding_window|random_churn")
      ->required();
  gen->add_option("--n", gen_params.n, "number of distinct ids")->required();
  gen->add_option("--ops", gen_params.ops, "total updates");
  gen->add_option("--window", gen_params.window, "sliding window width");
  gen->add_option("--insert-prob", gen_params.churn_insert_prob,
                  "random churn insert probability, in (0,1)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--instance", gen_instance,
                  "draw ids from this instance file instead of e0..e{n-1}");
  gen->add_option("--out", gen_out, "output stream file")->required();

  std::string base_instance;
  std::string base_algo;
  double base_tau = 1.0;
  double base_target = 1.0;
  CLI::App* base = app.add_subcommand("baseline", "run a static solver");
  base->add_option("--instance", base_instance, "instance JSON file")
      ->required();
  base->add_option("--algo", base_algo, "greedy|brute|static")->required();
  base->add_option("--tau", base_tau, "threshold for the static pass");
  base->add_option("--target-fraction", base_target,
                   "coverage goal as a fraction of f(V)");

  RunOptions verify_opt;
  CLI::App* verify =
      app.add_subcommand("verify", "replay with invariant checks");
  verify->add_option("--instance", verify_opt.instance_path, "instance file")
      ->required();
  verify->add_option("--stream", verify_opt.stream_path, "stream file")
      ->required();
  verify->add_option("--epsilon", verify_opt.eps, "accuracy parameter")
      ->required();
  verify->add_option("--eps-del", verify_opt.eps_del, "deletion tolerance");
  verify->add_option("--n-max", verify_opt.n_max, "ground-set size bound");
  verify->add_option("--seed", verify_opt.seed, "random seed");
  verify->add_option("--t-override", verify_opt.t_override,
                     "simulation trials in practical mode");
  verify->add_option("--out", verify_opt.out_path, "metrics output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(run_opt, /*force_check=*/false);
    if (verify->parsed()) return do_run(verify_opt, /*force_check=*/true);
    if (gen->parsed()) {
      if (!gen_instance.empty()) {
        dynsc::CoverageInstance instance = dynsc::load_instance(gen_instance);
        for (std::size_t i = 0; i < instance.ground().size(); ++i) {
          gen_params.ids.push_back(
              instance.ground().name_of(static_cast<dynsc::ElementId>(i)));
        }
      }
      std::vector<dynsc::UpdateOp> stream = dynsc::gen_stream(
          dynsc::stream_kind_from_name(gen_kind), gen_params, gen_seed);
      dynsc::save_stream(stream, gen_out);
      std::cout << "wrote " << stream.size() << " ops to " << gen_out << "\n";
      return kExitOk;
    }
    if (base->parsed()) {
      return do_baseline(base_instance, base_algo, base_tau, base_target);
    }
  } catch (const dynsc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dynsc::InternalInvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
