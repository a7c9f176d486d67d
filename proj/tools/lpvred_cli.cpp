/*
 Copyright 2026 The lpvred Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpvred/generators.hpp"
#include "lpvred/gramians.hpp"
#include "lpvred/hankel_reduce.hpp"
#include "lpvred/io.hpp"
#include "lpvred/model.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/report.hpp"
#include "lpvred/sensitivity.hpp"
#include "lpvred/simulate.hpp"

namespace {

using namespace lpvred;

/// exit 0: success; 1: usage or input file problems; 2: numerical
/// failure; 3: infeasible LMI.
constexpr int kUsageExit = 1;
constexpr int kNumericalExit = 2;
constexpr int kInfeasibleExit = 3;

std::string stem_of(const std::string& path) {
  std::filesystem::path p(path);
  if (p.extension() == ".json") p.replace_extension();
  return p.string();
}

/// "0..5" or "0,2,4" into reduction orders.
std::vector<Index> parse_orders(const std::string& text) {
  std::vector<Index> orders;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const long a = std::stol(text.substr(0, range));
    const long b = std::stol(text.substr(range + 2));
    for (long k = a; k <= b; ++k) orders.push_back(static_cast<Index>(k));
    return orders;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) orders.push_back(static_cast<Index>(std::stol(item)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return orders;
}

std::vector<ReductionMethod> parse_methods(const std::string& text) {
  std::vector<ReductionMethod> methods;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) methods.push_back(reduction_method_from_string(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return methods;
}

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 42;
  std::string out;
  Index n = 45, l = 5, m = 2, q = 2;
  Index blocks = 5, nodes = 9;
};

int run_gen(const GenArgs& args) {
  AffineLpvModel model = [&] {
    if (args.kind == "random") {
      RandomModelOptions opt;
      opt.n = args.n;
      opt.l = args.l;
      opt.m = args.m;
      opt.q = args.q;
      return generate_random_model(args.seed, opt);
    }
    ThermalModelOptions opt;
    opt.blocks = args.blocks;
    opt.nodes_per_block = args.nodes;
    return generate_thermal_model(args.seed, opt);
  }();
  save_model(model, args.out);
  std::printf("wrote %s: %s model, n=%d l=%d m=%d q=%d\n", args.out.c_str(),
              args.kind.c_str(), static_cast<int>(model.n()),
              static_cast<int>(model.l()), static_cast<int>(model.m()),
              static_cast<int>(model.q()));
  return 0;
}

struct GramianArgs {
  std::string model;
  std::string out;
  bool rate_bounded = false;
  bool trace_min = false;
};

int run_gramians(const GramianArgs& args) {
  const AffineLpvModel model = load_model(args.model);
  GramianSynthesisOptions opt;
  opt.rate_bounded = args.rate_bounded;
  opt.lmi.trace_min = args.trace_min;
  const auto pair = synthesize_gramian_pair(model, opt);
  const std::string stem = stem_of(args.out);
  const std::string p_path = stem + ".p.json";
  const std::string q_path = stem + ".q.json";
  save_gramian(pair.first, p_path);
  save_gramian(pair.second, q_path);
  std::printf(
      "wrote %s (%s, margin %.3e) and %s (%s, margin %.3e); box %s\n",
      p_path.c_str(), to_string(pair.first.status), pair.first.margin,
      q_path.c_str(), to_string(pair.second.status), pair.second.margin,
      pair.first.box_certified && pair.second.box_certified
          ? "certified"
          : "vertex-certified only");
  return 0;
}

struct ReduceArgs {
  std::string model;
  std::string method = "hankel";
  Index nr = 0;
  std::uint64_t seed = 42;
  std::string out;
  bool rate_bounded = false;
  int samples = 200;
};

int run_reduce(const ReduceArgs& args) {
  const AffineLpvModel model = load_model(args.model);
  const ReductionMethod method = reduction_method_from_string(args.method);
  EvalSet eval;
  eval.samples = args.samples;
  eval.seed = args.seed;

  ProjectionFile file;
  file.method = args.method;
  file.seed = args.seed;
  switch (method) {
    case ReductionMethod::Hankel: {
      GramianSynthesisOptions gopt;
      gopt.rate_bounded = args.rate_bounded;
      const auto pair = synthesize_gramian_pair(model, gopt);
      const HankelObjective objective(model, pair.first, pair.second, eval);
      HankelReduceOptions hopt;
      hopt.seed = args.seed;
      const HankelReduceResult result =
          optimize_projection(objective, args.nr, hopt);
      file.projection = result.projection;
      file.objective = result.objective;
      break;
    }
    case ReductionMethod::Tscm: {
      TscmOptions topt;
      topt.eval.samples = args.samples;
      topt.eval.seed = args.seed;
      file.projection =
          covariance_to_projection(tscm(model, topt), args.nr + 1, true);
      break;
    }
    case ReductionMethod::Scm: {
      ScmOptions sopt;
      sopt.eval.seed = args.seed;
      file.projection =
          covariance_to_projection(scm(model, sopt), args.nr + 1, true);
      break;
    }
    case ReductionMethod::Subsys: {
      file.projection =
          subsystem_projection(subsystem_hankel_ranking(model, eval), args.nr);
      break;
    }
  }

  const AffineLpvModel reduced = reduce_model(model, file.projection, method);
  save_model(reduced, args.out);
  const std::string proj_path = stem_of(args.out) + ".proj.json";
  save_projection(file, proj_path);
  const RelativePinfError err = relative_pinf_error(model, reduced, eval);
  std::printf("wrote %s and %s: method %s nr=%d, relative p_inf error %.6e\n",
              args.out.c_str(), proj_path.c_str(), args.method.c_str(),
              static_cast<int>(args.nr), err.value);
  return 0;
}

struct EvalArgs {
  std::string model;
  std::string norm = "pinf-hinf";
  int samples = 200;
  std::uint64_t seed = 42;
};

int run_eval(const EvalArgs& args) {
  const AffineLpvModel model = load_model(args.model);
  EvalSet eval;
  eval.samples = args.samples;
  eval.seed = args.seed;
  const PointNorm norm =
      args.norm == "pinf-hankel" ? PointNorm::Hankel : PointNorm::Hinf;
  const ParametricNorm result = p_norm(model, norm, eval);
  std::printf("%s = %.12e over %d points, attained at [", args.norm.c_str(),
              result.value, static_cast<int>(result.points));
  for (Index i = 0; i < result.argmax.size(); ++i) {
    std::printf("%s%.6f", i > 0 ? ", " : "", result.argmax(i));
  }
  std::printf("]\n");
  return 0;
}

struct SimulateArgs {
  std::string spec;
  std::string csv;
};

int run_simulate(const SimulateArgs& args) {
  const SimulationJob job = load_simulation_job(args.spec);
  const AffineLpvModel model = load_model(job.model_path);
  SimulationSpec spec = job.spec;
  const SimulationResult full = simulate(model, spec);
  if (job.reduced_path.empty()) {
    write_time_series_csv(args.csv, full.t, full.u, full.y);
    std::printf("wrote %s: %d samples, step %.6g\n", args.csv.c_str(),
                static_cast<int>(full.t.size()), full.step);
    return 0;
  }
  const AffineLpvModel reduced = load_model(job.reduced_path);
  spec.theta = full.theta;  // shared realization and grid
  spec.step = full.step;
  const SimulationResult red = simulate(reduced, spec);
  const Matrix e = full.y - red.y;
  write_time_series_csv(args.csv, full.t, full.u, red.y, &e);
  std::printf("wrote %s: %d samples, step %.6g, max |e| %.6e\n",
              args.csv.c_str(), static_cast<int>(full.t.size()), full.step,
              e.size() > 0 ? e.cwiseAbs().maxCoeff() : 0.0);
  return 0;
}

struct SweepArgs {
  std::string model;
  std::string methods = "hankel,tscm,scm,subsys";
  std::string orders = "";
  std::string report = "report.json";
  std::uint64_t seed = 42;
  int samples = 200;
  int workers = 0;
  bool rate_bounded = false;
  std::string out_dir;
};

int run_sweep_cmd(const SweepArgs& args) {
  const AffineLpvModel model = load_model(args.model);
  SweepOptions opt;
  opt.methods = parse_methods(args.methods);
  if (!args.orders.empty()) opt.orders = parse_orders(args.orders);
  opt.seed = args.seed;
  opt.eval.samples = args.samples;
  opt.eval.seed = args.seed;
  opt.gramian.rate_bounded = args.rate_bounded;
  opt.workers = args.workers;
  opt.out_dir = args.out_dir.empty()
                    ? std::filesystem::path(args.report)
                          .parent_path()
                          .string()
                    : args.out_dir;
  if (opt.out_dir.empty()) opt.out_dir = ".";
  const SweepReport report = run_reduction_sweep(model, opt);
  write_report(report, args.report);
  int failed = 0;
  for (const SweepCell& cell : report.cells) {
    if (!cell.failure.empty()) ++failed;
  }
  std::printf("wrote %s: %zu cells (%d failed), traces in %s\n",
              args.report.c_str(), report.cells.size(), failed,
              opt.out_dir.c_str());
  for (const SweepCell& cell : report.cells) {
    if (cell.failure.empty()) {
      std::printf("  %-7s nr=%d  error %.6e\n", to_string(cell.method),
                  static_cast<int>(cell.order), cell.error.value);
    } else {
      std::printf("  %-7s nr=%d  FAILED: %s\n", to_string(cell.method),
                  static_cast<int>(cell.order), cell.failure.c_str());
    }
  }
  return failed == 0 ? 0 : kNumericalExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lpvred: parameter-space reduction of affine LPV state-space models"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a seeded example model");
  gen_cmd->add_option("kind", gen.kind, "Model family")
      ->required()
      ->check(CLI::IsMember({"random", "thermal"}));
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen.out, "Output model JSON")->required();
  gen_cmd->add_option("--n", gen.n, "State count (random)");
  gen_cmd->add_option("--l", gen.l, "Parameter count (random)");
  gen_cmd->add_option("--m", gen.m, "Input count (random)");
  gen_cmd->add_option("--q", gen.q, "Output count (random)");
  gen_cmd->add_option("--blocks", gen.blocks, "Block count (thermal)");
  gen_cmd->add_option("--nodes-per-block", gen.nodes,
                      "Nodes per block (thermal)");

  GramianArgs gram;
  CLI::App* gram_cmd = app.add_subcommand(
      "gramians", "Synthesize affine Gramian upper bounds via vertex LMIs");
  gram_cmd->add_option("model", gram.model, "Model JSON")->required();
  gram_cmd->add_flag("--rate-bounded", gram.rate_bounded,
                     "Use the rate-bounded LMI family");
  gram_cmd->add_flag("--trace-min", gram.trace_min,
                     "Trace minimization instead of max-margin feasibility");
  gram_cmd->add_option("--out", gram.out,
                       "Output stem; writes <stem>.p.json and <stem>.q.json")
      ->required();

  ReduceArgs red;
  CLI::App* red_cmd = app.add_subcommand(
      "reduce", "Compute a parameter-space projection and reduce the model");
  red_cmd->add_option("model", red.model, "Model JSON")->required();
  red_cmd->add_option("--method", red.method, "Reduction method")
      ->check(CLI::IsMember({"hankel", "tscm", "scm", "subsys"}));
  red_cmd->add_option("--nr", red.nr, "Parameter directions kept")
      ->required();
  red_cmd->add_option("--seed", red.seed, "Optimizer and eval-set seed");
  red_cmd->add_option("--samples", red.samples,
                      "Interior samples in the evaluation set");
  red_cmd->add_flag("--rate-bounded", red.rate_bounded,
                    "Rate-bounded Gramians (hankel method)");
  red_cmd->add_option("--out", red.out, "Output reduced-model JSON")
      ->required();

  EvalArgs ev;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate a parametric norm of a model");
  eval_cmd->add_option("model", ev.model, "Model JSON")->required();
  eval_cmd->add_option("--norm", ev.norm, "Parametric norm")
      ->check(CLI::IsMember({"pinf-hankel", "pinf-hinf"}));
  eval_cmd->add_option("--samples", ev.samples,
                       "Interior samples in the evaluation set");
  eval_cmd->add_option("--seed", ev.seed, "Eval-set seed");

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Simulate a model (and optionally its reduction)");
  sim_cmd->add_option("--spec", sim.spec, "Simulation job JSON")->required();
  sim_cmd->add_option("--csv", sim.csv, "Output time-series CSV")
      ->required();

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Method-by-order reduction study with report and traces");
  sweep_cmd->add_option("model", sw.model, "Model JSON")->required();
  sweep_cmd->add_option("--methods", sw.methods, "Comma-separated methods");
  sweep_cmd->add_option("--nr", sw.orders,
                        "Orders, as a..b range or comma list (default 0..l)");
  sweep_cmd->add_option("--report", sw.report, "Output report JSON");
  sweep_cmd->add_option("--seed", sw.seed, "Sweep seed");
  sweep_cmd->add_option("--samples", sw.samples,
                        "Interior samples in the evaluation set");
  sweep_cmd->add_option("--workers", sw.workers,
                        "Worker threads (default: LPVRED_WORKERS or 1)");
  sweep_cmd->add_flag("--rate-bounded", sw.rate_bounded,
                      "Rate-bounded Gramians for the hankel method");
  sweep_cmd->add_option("--out-dir", sw.out_dir,
                        "Trace directory (default: report directory)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (gram_cmd->parsed()) return run_gramians(gram);
    if (red_cmd->parsed()) return run_reduce(red);
    if (eval_cmd->parsed()) return run_eval(ev);
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sw);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasibleExit;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalExit;
  } catch (const StabilityError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalExit;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kUsageExit;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageExit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalExit;
  }
  return 0;
}
