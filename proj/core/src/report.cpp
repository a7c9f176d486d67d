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

#include "lpvred/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>
#include <utility>

#include <json.hpp>

#include "lpvred/errors.hpp"
#include "lpvred/io.hpp"

namespace lpvred {

namespace {

using nlohmann::json;

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string csv_name(ReductionMethod method, Index order) {
  return std::string("sim_") + to_string(method) + "_nr" +
         std::to_string(order) + ".csv";
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

/// Matches the relative_pinf_error convention with a shared,
/// precomputed denominator.
RelativePinfError relative_error_against(const ParametricNorm& den,
                                         const AffineLpvModel& model,
                                         const AffineLpvModel& reduced,
                                         const EvalSet& eval) {
  const AffineLpvModel diff = difference_model(model, reduced);
  const ParametricNorm num = p_norm(diff, PointNorm::Hinf, eval);
  RelativePinfError out;
  out.numerator = num.value;
  out.denominator = den.value;
  out.argmax = num.argmax;
  if (den.value > 0.0) {
    out.value = num.value / den.value;
  } else {
    out.value =
        num.value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json eval_to_json(const EvalSet& eval) {
  json j;
  switch (eval.kind) {
    case EvalSet::Kind::Vertices:
      j["kind"] = "vertices";
      break;
    case EvalSet::Kind::VerticesPlusSamples:
      j["kind"] = "vertices+samples";
      j["samples"] = eval.samples;
      j["seed"] = eval.seed;
      break;
    case EvalSet::Kind::Grid:
      j["kind"] = "grid";
      j["grid_per_axis"] = eval.grid_per_axis;
      break;
  }
  return j;
}

}  // namespace

int resolve_workers(int requested) {
  constexpr int kMax = 256;
  if (requested > 0) return std::min(requested, kMax);
  if (const char* env = std::getenv("LPVRED_WORKERS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) {
      return static_cast<int>(std::min<long>(value, kMax));
    }
  }
  return 1;
}

SweepReport run_reduction_sweep(const AffineLpvModel& model,
                                const SweepOptions& options) {
  const auto t_total = std::chrono::steady_clock::now();
  const Index l = model.l();

  SweepReport report;
  report.dims = {model.n(), model.m(), model.q(), model.l()};
  report.time = model.time();
  report.model_step = model.step();
  report.seed = options.seed;
  report.eval = options.eval;
  report.methods = options.methods;
  if (report.methods.empty()) {
    throw ConfigError("sweep needs at least one method");
  }

  report.orders = options.orders;
  if (report.orders.empty()) {
    for (Index k = 0; k <= l; ++k) report.orders.push_back(k);
  }
  std::sort(report.orders.begin(), report.orders.end());
  report.orders.erase(
      std::unique(report.orders.begin(), report.orders.end()),
      report.orders.end());
  for (const Index order : report.orders) {
    if (order < 0 || order > l) {
      throw ConfigError("sweep order out of range 0..l");
    }
  }

  // Simulation protocol. The step is pinned by running the full model
  // first, so every error trace shares its grid.
  report.sim = options.sim;
  if (report.sim.theta.size() == 0) {
    report.sim.theta = model.box().sample(1, options.seed)[0];
  }
  report.simulated = !options.out_dir.empty();
  SimulationResult full_sim;
  if (report.simulated) {
    if (report.sim.t_final <= 0.0) {
      double tau = slowest_time_constant(model, report.sim.theta);
      if (model.time() == TimeKind::Discrete) tau *= model.step();
      report.sim.t_final = std::max(5.0 * tau, 10.0 * model.step());
    }
    if (report.sim.segments.empty() && model.m() > 0) {
      report.sim.segments.push_back(
          {Vector::Ones(model.m()), 0.4 * report.sim.t_final});
    }
    std::filesystem::create_directories(options.out_dir);
    full_sim = simulate(model, report.sim);
    report.sim.step = full_sim.step;
    report.full_csv = "sim_full.csv";
    write_time_series_csv(join(options.out_dir, report.full_csv),
                          full_sim.t, full_sim.u, full_sim.y);
  }

  const auto wants = [&](ReductionMethod m) {
    return std::find(report.methods.begin(), report.methods.end(), m) !=
           report.methods.end();
  };

  // Method prerequisites, sequential. A failure here fails every cell
  // of its method but the sweep carries on.
  if (wants(ReductionMethod::Tscm)) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      report.tscm_cov = tscm(model, options.tscm);
      report.has_tscm = true;
    } catch (const Error& e) {
      report.tscm_failure = e.what();
    }
    report.tscm_seconds = seconds_since(t0);
  }
  if (wants(ReductionMethod::Scm)) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      report.scm_cov = scm(model, options.scm);
      report.has_scm = true;
    } catch (const Error& e) {
      report.scm_failure = e.what();
    }
    report.scm_seconds = seconds_since(t0);
  }
  if (wants(ReductionMethod::Subsys)) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      report.ranking = subsystem_hankel_ranking(model, options.eval);
      report.has_ranking = true;
    } catch (const Error& e) {
      report.ranking_failure = e.what();
    }
    report.ranking_seconds = seconds_since(t0);
  }
  std::unique_ptr<HankelObjective> objective;
  if (wants(ReductionMethod::Hankel)) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto pair = synthesize_gramian_pair(model, options.gramian);
      report.gram_p = std::move(pair.first);
      report.gram_q = std::move(pair.second);
      objective = std::make_unique<HankelObjective>(
          model, report.gram_p, report.gram_q, options.eval);
      report.has_gramians = true;
    } catch (const Error& e) {
      report.gramian_failure = e.what();
    }
    report.gramian_seconds = seconds_since(t0);
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    report.full_norm = p_norm(model, PointNorm::Hinf, options.eval);
    report.norm_seconds = seconds_since(t0);
  }

  // Projections per cell, sequential: the Hankel order sweep chains
  // warm starts and is inherently ordered; the rest are cheap.
  report.cells.resize(report.methods.size() * report.orders.size());
  for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
    const ReductionMethod method = report.methods[mi];
    SweepCell* row = report.cells.data() + mi * report.orders.size();
    for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
      row[oi].method = method;
      row[oi].order = report.orders[oi];
    }
    switch (method) {
      case ReductionMethod::Hankel: {
        if (!report.has_gramians) {
          for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
            row[oi].failure = report.gramian_failure;
          }
          break;
        }
        HankelReduceOptions hopt = options.hankel;
        if (report.has_tscm) {
          hopt.extra_starts.push_back(
              covariance_to_projection(report.tscm_cov, l + 1, true)
                  .matrix());
        }
        if (report.has_scm) {
          hopt.extra_starts.push_back(
              covariance_to_projection(report.scm_cov, l + 1, true)
                  .matrix());
        }
        try {
          const auto results =
              hankel_order_sweep(*objective, report.orders, hopt);
          for (std::size_t oi = 0; oi < results.size(); ++oi) {
            row[oi].projection = results[oi].projection;
            row[oi].objective = results[oi].objective;
            row[oi].start_label = results[oi].start_label;
          }
        } catch (const Error& e) {
          for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
            if (row[oi].failure.empty()) row[oi].failure = e.what();
          }
        }
        break;
      }
      case ReductionMethod::Tscm:
      case ReductionMethod::Scm: {
        const bool have = method == ReductionMethod::Tscm
                              ? report.has_tscm
                              : report.has_scm;
        const std::string& why = method == ReductionMethod::Tscm
                                     ? report.tscm_failure
                                     : report.scm_failure;
        const CovarianceMatrix& cov = method == ReductionMethod::Tscm
                                          ? report.tscm_cov
                                          : report.scm_cov;
        for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
          if (!have) {
            row[oi].failure = why;
            continue;
          }
          try {
            row[oi].projection = covariance_to_projection(
                cov, report.orders[oi] + 1, true);
          } catch (const Error& e) {
            row[oi].failure = e.what();
          }
        }
        break;
      }
      case ReductionMethod::Subsys: {
        for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
          if (!report.has_ranking) {
            row[oi].failure = report.ranking_failure;
            continue;
          }
          try {
            row[oi].projection =
                subsystem_projection(report.ranking, report.orders[oi]);
          } catch (const Error& e) {
            row[oi].failure = e.what();
          }
        }
        break;
      }
    }
  }

  // Cell evaluations: reduce, score, simulate. Cells are independent;
  // results land in preassigned slots so the merge is deterministic.
  const int workers = resolve_workers(options.workers);
  std::atomic<std::size_t> next{0};
  auto evaluate_cell = [&](SweepCell& cell) {
    if (!cell.failure.empty()) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const AffineLpvModel reduced =
          reduce_model(model, cell.projection, cell.method);
      if (objective && std::isnan(cell.objective)) {
        cell.objective = objective->objective(cell.projection);
      }
      cell.error = relative_error_against(report.full_norm, model, reduced,
                                          options.eval);
      if (report.simulated) {
        const SimulationResult rsim = simulate(reduced, report.sim);
        const Matrix e = full_sim.y - rsim.y;
        cell.csv = csv_name(cell.method, cell.order);
        write_time_series_csv(join(options.out_dir, cell.csv), rsim.t,
                              rsim.u, rsim.y, &e);
      }
    } catch (const Error& e) {
      cell.failure = e.what();
    }
    cell.seconds = seconds_since(t0);
  };
  auto drain = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= report.cells.size()) return;
      evaluate_cell(report.cells[i]);
    }
  };
  if (workers <= 1 || report.cells.size() <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(workers), report.cells.size()));
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
  }

  if (report.simulated) {
    report.error_csv = "error_vs_nr.csv";
    std::ofstream out(join(options.out_dir, report.error_csv));
    if (!out) throw IoError("cannot write " + report.error_csv);
    out << "nr";
    for (const ReductionMethod method : report.methods) {
      out << ',' << to_string(method);
    }
    out << '\n';
    char buf[32];
    for (std::size_t oi = 0; oi < report.orders.size(); ++oi) {
      out << report.orders[oi];
      for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
        const SweepCell& cell =
            report.cells[mi * report.orders.size() + oi];
        const double v = cell.failure.empty()
                             ? cell.error.value
                             : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << ',' << buf;
      }
      out << '\n';
    }
  }

  report.total_seconds = seconds_since(t_total);
  return report;
}

void write_report(const SweepReport& report, const std::string& path) {
  json j;
  j["format"] = "lpvred-report";
  j["version"] = 1;
  j["model"] = {{"n", report.dims.n},
                {"m", report.dims.m},
                {"q", report.dims.q},
                {"l", report.dims.l},
                {"time", report.time == TimeKind::Continuous
                             ? "continuous"
                             : "discrete"}};
  if (report.time == TimeKind::Discrete) {
    j["model"]["step"] = report.model_step;
  }
  j["seed"] = report.seed;
  j["eval"] = eval_to_json(report.eval);
  json methods = json::array();
  for (const ReductionMethod m : report.methods) {
    methods.push_back(to_string(m));
  }
  j["methods"] = std::move(methods);
  j["orders"] = report.orders;

  if (report.simulated) {
    json sim;
    sim["theta"] = vector_to_json(report.sim.theta);
    sim["t_final"] = report.sim.t_final;
    sim["step"] = report.sim.step;
    json segments = json::array();
    for (const InputSegment& seg : report.sim.segments) {
      segments.push_back({{"value", vector_to_json(seg.value)},
                          {"duration", seg.duration}});
    }
    sim["segments"] = std::move(segments);
    sim["full_csv"] = report.full_csv;
    sim["error_csv"] = report.error_csv;
    j["simulation"] = std::move(sim);
  }

  j["full_pinf"] = {{"value", report.full_norm.value},
                    {"argmax", vector_to_json(report.full_norm.argmax)},
                    {"points", report.full_norm.points}};

  json pre;
  if (report.has_gramians) {
    pre["gramians"] = {{"status_p", to_string(report.gram_p.status)},
                       {"status_q", to_string(report.gram_q.status)},
                       {"rate_bounded", report.gram_p.rate_bounded},
                       {"margin_p", report.gram_p.margin},
                       {"margin_q", report.gram_q.margin},
                       {"delta_p", report.gram_p.delta},
                       {"delta_q", report.gram_q.delta},
                       {"box_certified", report.gram_p.box_certified &&
                                             report.gram_q.box_certified}};
  } else if (!report.gramian_failure.empty()) {
    pre["gramians"] = {{"failure", report.gramian_failure}};
  }
  if (report.has_tscm) {
    pre["tscm"] = {{"entries", matrix_to_json(report.tscm_cov.entries)},
                   {"eval", eval_to_json(report.tscm_cov.eval)},
                   {"freq_min", report.tscm_cov.freq_min},
                   {"freq_max", report.tscm_cov.freq_max},
                   {"freq_points", report.tscm_cov.freq_points}};
    if (!report.tscm_cov.warning.empty()) {
      pre["tscm"]["warning"] = report.tscm_cov.warning;
    }
  } else if (!report.tscm_failure.empty()) {
    pre["tscm"] = {{"failure", report.tscm_failure}};
  }
  if (report.has_scm) {
    pre["scm"] = {{"entries", matrix_to_json(report.scm_cov.entries)},
                  {"eval", eval_to_json(report.scm_cov.eval)},
                  {"step", report.scm_cov.step},
                  {"k_max", report.scm_cov.k_max}};
    if (!report.scm_cov.warning.empty()) {
      pre["scm"]["warning"] = report.scm_cov.warning;
    }
  } else if (!report.scm_failure.empty()) {
    pre["scm"] = {{"failure", report.scm_failure}};
  }
  if (report.has_ranking) {
    pre["subsys"] = {{"scores", vector_to_json(report.ranking.scores)},
                     {"order", report.ranking.order},
                     {"scoring", "probe-difference"}};
  } else if (!report.ranking_failure.empty()) {
    pre["subsys"] = {{"failure", report.ranking_failure}};
  }
  if (!pre.empty()) j["precompute"] = std::move(pre);

  json cells = json::array();
  for (const SweepCell& cell : report.cells) {
    json c;
    c["method"] = to_string(cell.method);
    c["nr"] = cell.order;
    if (!cell.failure.empty()) {
      c["failure"] = cell.failure;
    } else {
      c["T_r"] = matrix_to_json(cell.projection.matrix());
      if (std::isfinite(cell.objective)) c["objective"] = cell.objective;
      if (!cell.start_label.empty()) c["start"] = cell.start_label;
      c["error"] = {{"value", cell.error.value},
                    {"numerator", cell.error.numerator},
                    {"denominator", cell.error.denominator},
                    {"argmax", vector_to_json(cell.error.argmax)}};
      if (!cell.csv.empty()) c["csv"] = cell.csv;
    }
    c["timings"] = {{"seconds", cell.seconds}};
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  j["notes"] = json::array(
      {"hankel objective: spectral norm of the gramian-product "
       "difference, soft-max smoothed during descent, exact at report "
       "time",
       "subsys scores: Hankel norm of probe differences against the "
       "center-frozen model"});

  j["timings"] = {{"gramians", report.gramian_seconds},
                  {"tscm", report.tscm_seconds},
                  {"scm", report.scm_seconds},
                  {"subsys", report.ranking_seconds},
                  {"full_norm", report.norm_seconds},
                  {"total", report.total_seconds}};

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(1) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace lpvred
