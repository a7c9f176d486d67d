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

#include "lpvred/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpvred/errors.hpp"
#include "lpvred/parameter_box.hpp"

namespace lpvred {

namespace {

using nlohmann::json;

json read_json(const std::string& path, const char* format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format) {
    throw IoError(path + ": expected a \"" + std::string(format) +
                  "\" file");
  }
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(1) << '\n';
  if (!out) throw IoError("write failed for " + path);
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

Matrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw IoError(what + ": expected an array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  Matrix m;
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array()) throw IoError(what + ": rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<Index>(row.size()) != cols) {
      throw IoError(what + ": ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw IoError(what + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  if (rows == 0) m.resize(0, 0);
  return m;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw IoError(what + ": expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) throw IoError(what + ": non-numeric entry");
    v(i) = j[i].get<double>();
  }
  return v;
}

json family_to_json(const std::vector<Matrix>& blocks) {
  json arr = json::array();
  for (const Matrix& b : blocks) arr.push_back(matrix_to_json(b));
  return arr;
}

std::vector<Matrix> family_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw IoError(what + ": expected an array of matrices");
  std::vector<Matrix> blocks;
  blocks.reserve(j.size());
  for (size_t k = 0; k < j.size(); ++k) {
    blocks.push_back(matrix_from_json(j[k], what));
  }
  return blocks;
}

const char* eval_kind_token(EvalSet::Kind kind) {
  switch (kind) {
    case EvalSet::Kind::Vertices:
      return "vertices";
    case EvalSet::Kind::VerticesPlusSamples:
      return "vertices+samples";
    case EvalSet::Kind::Grid:
      return "grid";
  }
  return "vertices";
}

EvalSet::Kind eval_kind_from_token(const std::string& token,
                                   const std::string& what) {
  if (token == "vertices") return EvalSet::Kind::Vertices;
  if (token == "vertices+samples") return EvalSet::Kind::VerticesPlusSamples;
  if (token == "grid") return EvalSet::Kind::Grid;
  throw IoError(what + ": unknown evaluation-set kind \"" + token + "\"");
}

json eval_to_json(const EvalSet& eval) {
  return json{{"kind", eval_kind_token(eval.kind)},
              {"samples", eval.samples},
              {"seed", eval.seed},
              {"grid_per_axis", eval.grid_per_axis}};
}

EvalSet eval_from_json(const json& j, const std::string& what) {
  EvalSet eval;
  eval.kind = eval_kind_from_token(j.value("kind", "vertices"), what);
  eval.samples = j.value("samples", 0);
  eval.seed = j.value("seed", std::uint64_t{42});
  eval.grid_per_axis = j.value("grid_per_axis", 11);
  return eval;
}

}  // namespace

void save_model(const AffineLpvModel& model, const std::string& path) {
  json j;
  j["format"] = "lpvred-model";
  j["version"] = 1;
  j["n"] = model.n();
  j["m"] = model.m();
  j["q"] = model.q();
  j["l"] = model.l();
  j["time"] =
      model.time() == TimeKind::Continuous ? "continuous" : "discrete";
  j["step"] = model.step();
  j["A"] = family_to_json(model.a_blocks());
  j["B"] = family_to_json(model.b_blocks());
  j["C"] = family_to_json(model.c_blocks());
  j["D"] = family_to_json(model.d_blocks());
  const ParameterBox& box = model.box();
  json theta;
  theta["lower"] = vector_to_json(box.lower());
  theta["upper"] = vector_to_json(box.upper());
  if (box.has_rate_bounds()) {
    theta["rate_lower"] = vector_to_json(box.rate_lower());
    theta["rate_upper"] = vector_to_json(box.rate_upper());
  }
  j["theta"] = std::move(theta);
  if (model.original_box()) {
    j["original_box"] = {
        {"lower", vector_to_json(model.original_box()->first)},
        {"upper", vector_to_json(model.original_box()->second)}};
  }
  write_json(j, path);
}

AffineLpvModel load_model(const std::string& path) {
  const json j = read_json(path, "lpvred-model");
  try {
    const std::string time = j.value("time", "continuous");
    if (time != "continuous" && time != "discrete") {
      throw IoError(path + ": unknown time kind \"" + time + "\"");
    }
    const json& theta = j.at("theta");
    ParameterBox box(vector_from_json(theta.at("lower"), "theta.lower"),
                     vector_from_json(theta.at("upper"), "theta.upper"));
    if (theta.contains("rate_lower") && theta.contains("rate_upper")) {
      box.set_rate_bounds(
          vector_from_json(theta.at("rate_lower"), "theta.rate_lower"),
          vector_from_json(theta.at("rate_upper"), "theta.rate_upper"));
    }
    AffineLpvModel model(
        family_from_json(j.at("A"), "A"), family_from_json(j.at("B"), "B"),
        family_from_json(j.at("C"), "C"), family_from_json(j.at("D"), "D"),
        std::move(box),
        time == "continuous" ? TimeKind::Continuous : TimeKind::Discrete,
        j.value("step", 0.0));
    if (j.contains("original_box")) {
      model.annotate_original_box(
          vector_from_json(j["original_box"].at("lower"),
                           "original_box.lower"),
          vector_from_json(j["original_box"].at("upper"),
                           "original_box.upper"));
    }
    return model;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_gramian(const AffineGramian& gramian, const std::string& path) {
  json j;
  j["format"] = "lpvred-gramian";
  j["version"] = 1;
  j["kind"] = to_string(gramian.kind);
  j["n"] = gramian.n();
  j["l"] = gramian.l();
  j["blocks"] = family_to_json(gramian.blocks);
  j["margin"] = gramian.margin;
  if (std::isfinite(gramian.objective)) j["objective"] = gramian.objective;
  j["status"] = to_string(gramian.status);
  j["rate_bounded"] = gramian.rate_bounded;
  j["delta"] = gramian.delta;
  j["curvature"] = gramian.curvature;
  j["box_certified"] = gramian.box_certified;
  write_json(j, path);
}

AffineGramian load_gramian(const std::string& path) {
  const json j = read_json(path, "lpvred-gramian");
  try {
    AffineGramian g;
    const std::string kind = j.value("kind", "");
    if (kind == to_string(GramianKind::Controllability)) {
      g.kind = GramianKind::Controllability;
    } else if (kind == to_string(GramianKind::Observability)) {
      g.kind = GramianKind::Observability;
    } else {
      throw IoError(path + ": unknown gramian kind \"" + kind + "\"");
    }
    g.blocks = family_from_json(j.at("blocks"), "blocks");
    if (g.blocks.empty()) throw IoError(path + ": empty block family");
    g.margin = j.value("margin", 0.0);
    g.objective = j.contains("objective")
                      ? j["objective"].get<double>()
                      : std::numeric_limits<double>::quiet_NaN();
    const std::string status = j.value("status", "feasible");
    g.status = SdpStatus::Feasible;
    for (const SdpStatus s :
         {SdpStatus::Optimal, SdpStatus::Feasible, SdpStatus::Infeasible,
          SdpStatus::IterationLimit, SdpStatus::NumericalTrouble}) {
      if (status == to_string(s)) g.status = s;
    }
    g.rate_bounded = j.value("rate_bounded", false);
    g.delta = j.value("delta", 0.0);
    g.curvature = j.value("curvature", 0.0);
    g.box_certified = j.value("box_certified", false);
    return g;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_projection(const ProjectionFile& file, const std::string& path) {
  json j;
  j["format"] = "lpvred-projection";
  j["version"] = 1;
  j["n_r"] = file.projection.n_r();
  j["T_r"] = matrix_to_json(file.projection.matrix());
  j["method"] = file.method;
  if (std::isfinite(file.objective)) j["objective"] = file.objective;
  j["seed"] = file.seed;
  write_json(j, path);
}

ProjectionFile load_projection(const std::string& path) {
  const json j = read_json(path, "lpvred-projection");
  try {
    ProjectionFile file;
    const Matrix t = matrix_from_json(j.at("T_r"), "T_r");
    file.projection = ParameterProjection(t);
    if (j.contains("n_r") &&
        j["n_r"].get<Index>() != file.projection.n_r()) {
      throw IoError(path + ": n_r does not match the stored matrix");
    }
    file.method = j.value("method", "");
    file.objective = j.contains("objective")
                         ? j["objective"].get<double>()
                         : std::numeric_limits<double>::quiet_NaN();
    file.seed = j.value("seed", std::uint64_t{0});
    return file;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_covariance(const CovarianceMatrix& cov, const std::string& path) {
  json j;
  j["format"] = "lpvred-covariance";
  j["version"] = 1;
  j["kind"] = to_string(cov.kind);
  j["entries"] = matrix_to_json(cov.entries);
  j["eval"] = eval_to_json(cov.eval);
  if (cov.kind == CovarianceMatrix::Kind::Tscm) {
    j["freq_min"] = cov.freq_min;
    j["freq_max"] = cov.freq_max;
    j["freq_points"] = cov.freq_points;
  } else {
    j["step"] = cov.step;
    j["k_max"] = cov.k_max;
  }
  if (!cov.warning.empty()) j["warning"] = cov.warning;
  write_json(j, path);
}

CovarianceMatrix load_covariance(const std::string& path) {
  const json j = read_json(path, "lpvred-covariance");
  try {
    CovarianceMatrix cov;
    const std::string kind = j.value("kind", "");
    if (kind == "tscm") {
      cov.kind = CovarianceMatrix::Kind::Tscm;
    } else if (kind == "scm") {
      cov.kind = CovarianceMatrix::Kind::Scm;
    } else {
      throw IoError(path + ": unknown covariance kind \"" + kind + "\"");
    }
    cov.entries = matrix_from_json(j.at("entries"), "entries");
    if (cov.entries.rows() != cov.entries.cols()) {
      throw IoError(path + ": entries must be square");
    }
    if (j.contains("eval")) cov.eval = eval_from_json(j["eval"], "eval");
    cov.freq_min = j.value("freq_min", 0.0);
    cov.freq_max = j.value("freq_max", 0.0);
    cov.freq_points = j.value("freq_points", 0);
    cov.step = j.value("step", 0.0);
    cov.k_max = j.value("k_max", Index{0});
    cov.warning = j.value("warning", "");
    return cov;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

SimulationJob load_simulation_job(const std::string& path) {
  const json j = read_json(path, "lpvred-simulation");
  try {
    SimulationJob job;
    job.model_path = j.at("model").get<std::string>();
    job.reduced_path = j.value("reduced", "");
    if (j.contains("segments")) {
      for (const json& seg : j["segments"]) {
        InputSegment segment;
        segment.value = vector_from_json(seg.at("value"), "segment value");
        segment.duration = seg.at("duration").get<double>();
        job.spec.segments.push_back(std::move(segment));
      }
    }
    job.spec.t_final = j.value("t_final", -1.0);
    job.spec.step = j.value("step", -1.0);
    if (j.contains("theta")) {
      job.spec.theta = vector_from_json(j["theta"], "theta");
    }
    job.spec.theta_seed = j.value("theta_seed", std::uint64_t{42});
    if (j.contains("x0")) job.spec.x0 = vector_from_json(j["x0"], "x0");
    return job;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_time_series_csv(const std::string& path, const Vector& t,
                           const Matrix& u, const Matrix& y,
                           const Matrix* e) {
  const Index count = t.size();
  if (u.cols() != count || y.cols() != count ||
      (e != nullptr && e->cols() != count)) {
    throw DimensionError("time series column count mismatch");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "t";
  for (Index i = 1; i <= u.rows(); ++i) out << ",u" << i;
  for (Index i = 1; i <= y.rows(); ++i) out << ",y" << i;
  if (e != nullptr) {
    for (Index i = 1; i <= e->rows(); ++i) out << ",e" << i;
  }
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (Index k = 0; k < count; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", t(k));
    out << buf;
    for (Index i = 0; i < u.rows(); ++i) put(u(i, k));
    for (Index i = 0; i < y.rows(); ++i) put(y(i, k));
    if (e != nullptr) {
      for (Index i = 0; i < e->rows(); ++i) put((*e)(i, k));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace lpvred
