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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "lpvred/generators.hpp"
#include "lpvred/gramians.hpp"
#include "lpvred/io.hpp"
#include "lpvred/sensitivity.hpp"
#include "test_helpers.hpp"

namespace {

using namespace lpvred;
using lpvred::testing::max_abs;

TEST_SUITE_BEGIN("io");

std::string temp_path(const char* name) {
  return std::string("/tmp/lpvred_io_test_") + name;
}

TEST_CASE("model files round-trip bit-exactly") {
  ThermalModelOptions options;
  options.blocks = 3;
  options.nodes_per_block = 3;
  const AffineLpvModel model = generate_thermal_model(7, options);
  const std::string path = temp_path("model.json");
  save_model(model, path);
  const AffineLpvModel back = load_model(path);

  CHECK(back.n() == model.n());
  CHECK(back.l() == model.l());
  CHECK(back.box().has_rate_bounds());
  CHECK(max_abs(Matrix(back.box().rate_upper() -
                       model.box().rate_upper())) == 0.0);

  const Vector theta = model.box().sample(1, 5)[0];
  const LtiRealization a = model.evaluate_at(theta);
  const LtiRealization b = back.evaluate_at(theta);
  CHECK(max_abs(Matrix(a.A - b.A)) == 0.0);
  CHECK(max_abs(Matrix(a.B - b.B)) == 0.0);
  CHECK(max_abs(Matrix(a.C - b.C)) == 0.0);
  CHECK(max_abs(Matrix(a.D - b.D)) == 0.0);
}

TEST_CASE("the original physical box survives as a label") {
  // A non-unit construction box is normalized; its physical bounds
  // must come back from the file.
  std::vector<Matrix> as = {Matrix::Constant(1, 1, -6.0),
                            Matrix::Constant(1, 1, 0.5)};
  std::vector<Matrix> bs = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  std::vector<Matrix> cs = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
  const ParameterBox physical(Vector::Constant(1, -1.0),
                              Vector::Constant(1, 3.0));
  const AffineLpvModel model(as, bs, cs, ds, physical);
  REQUIRE(model.original_box());

  const std::string path = temp_path("physical.json");
  save_model(model, path);
  const AffineLpvModel back = load_model(path);
  CHECK(back.box().is_unit());
  REQUIRE(back.original_box());
  CHECK(back.original_box()->first(0) == -1.0);
  CHECK(back.original_box()->second(0) == 3.0);
}

TEST_CASE("discrete models keep their step") {
  const AffineLpvModel model = testing::random_discrete_model(3, 4, 1, 1, 2);
  const std::string path = temp_path("discrete.json");
  save_model(model, path);
  const AffineLpvModel back = load_model(path);
  CHECK(back.time() == TimeKind::Discrete);
  CHECK(back.step() == model.step());
}

TEST_CASE("gramian files preserve synthesis metadata") {
  Matrix a0(2, 2), a1(2, 2);
  a0 << -2.0, 0.5, 0.0, -1.5;
  a1 << -0.3, 0.1, 0.2, -0.4;
  std::vector<Matrix> as = {a0, a1};
  std::vector<Matrix> bs = {Matrix::Ones(2, 1), Matrix::Zero(2, 1)};
  std::vector<Matrix> cs = {Matrix::Ones(1, 2), Matrix::Zero(1, 2)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(1));
  const AffineGramian bound =
      synthesize_gramian(model, GramianKind::Observability);

  const std::string path = temp_path("gramian.json");
  save_gramian(bound, path);
  const AffineGramian back = load_gramian(path);
  CHECK(back.kind == bound.kind);
  CHECK(back.status == bound.status);
  CHECK(back.margin == bound.margin);
  CHECK(back.delta == bound.delta);
  CHECK(back.box_certified == bound.box_certified);
  CHECK(back.rate_bounded == bound.rate_bounded);
  REQUIRE(back.blocks.size() == bound.blocks.size());
  for (std::size_t i = 0; i < back.blocks.size(); ++i)
    CHECK(max_abs(Matrix(back.blocks[i] - bound.blocks[i])) == 0.0);
  CHECK(back.objective == bound.objective);

  // A feasibility-phase bound has no objective; NaN must survive.
  GramianSynthesisOptions feas;
  feas.lmi.trace_min = false;
  const AffineGramian loose =
      synthesize_gramian(model, GramianKind::Controllability, feas);
  CHECK_FALSE(std::isfinite(loose.objective));
  save_gramian(loose, path);
  CHECK_FALSE(std::isfinite(load_gramian(path).objective));
}

TEST_CASE("projection files round-trip orthonormality") {
  auto rng = make_rng(13);
  ProjectionFile file;
  file.projection = ParameterProjection(random_orthonormal(4, 2, rng));
  file.method = "hankel";
  file.objective = 0.25;
  file.seed = 99;
  const std::string path = temp_path("proj.json");
  save_projection(file, path);
  const ProjectionFile back = load_projection(path);
  CHECK(back.method == "hankel");
  CHECK(back.objective == 0.25);
  CHECK(back.seed == 99);
  CHECK(max_abs(Matrix(back.projection.matrix() -
                       file.projection.matrix())) == 0.0);
}

TEST_CASE("covariance files keep grid metadata and warnings") {
  // Slow discrete mode (tau ~ 100 samples) so a short horizon warns.
  std::vector<Matrix> as = {Matrix::Constant(1, 1, 0.99),
                            Matrix::Constant(1, 1, -0.05)};
  std::vector<Matrix> bs = {Matrix::Ones(1, 1), Matrix::Constant(1, 1, 0.1)};
  std::vector<Matrix> cs = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(1),
                             TimeKind::Discrete, 0.1);
  ScmOptions options;
  options.k_max = 8;  // deliberately short horizon to set the warning
  const CovarianceMatrix cov = scm(model, options);
  CHECK_FALSE(cov.warning.empty());

  const std::string path = temp_path("scm.json");
  save_covariance(cov, path);
  const CovarianceMatrix back = load_covariance(path);
  CHECK(back.kind == CovarianceMatrix::Kind::Scm);
  CHECK(back.k_max == cov.k_max);
  CHECK(back.step == cov.step);
  CHECK(back.warning == cov.warning);
  CHECK(max_abs(Matrix(back.entries - cov.entries)) == 0.0);
  CHECK(back.eval.kind == cov.eval.kind);

  TscmOptions topt;
  topt.eval = {EvalSet::Kind::Vertices, 0, 42, 11};
  topt.freq_points = 12;
  const CovarianceMatrix freq = tscm(model, topt);
  save_covariance(freq, path);
  const CovarianceMatrix fback = load_covariance(path);
  CHECK(fback.kind == CovarianceMatrix::Kind::Tscm);
  CHECK(fback.freq_min == freq.freq_min);
  CHECK(fback.freq_max == freq.freq_max);
  CHECK(fback.freq_points == 12);
}

TEST_CASE("simulation jobs parse segments and optional fields") {
  const std::string model_path = temp_path("job_model.json");
  save_model(testing::random_discrete_model(4, 3, 2, 1, 1), model_path);
  const std::string path = temp_path("job.json");
  std::ofstream out(path);
  out << "{\n"
         " \"format\": \"lpvred-simulation\",\n"
         " \"model\": \"" << model_path << "\",\n"
         " \"segments\": [\n"
         "  {\"value\": [1.0, 0.5], \"duration\": 2.0},\n"
         "  {\"value\": [0.0, 0.0], \"duration\": 1.0}\n"
         " ],\n"
         " \"t_final\": 5.0,\n"
         " \"theta_seed\": 11,\n"
         " \"x0\": [0.1, 0.2, 0.3]\n"
         "}\n";
  out.close();
  const SimulationJob job = load_simulation_job(path);
  CHECK(job.model_path == model_path);
  CHECK(job.reduced_path.empty());
  REQUIRE(job.spec.segments.size() == 2);
  CHECK(job.spec.segments[0].value(1) == 0.5);
  CHECK(job.spec.segments[1].duration == 1.0);
  CHECK(job.spec.t_final == 5.0);
  CHECK(job.spec.theta_seed == 11);
  CHECK(job.spec.theta.size() == 0);
  REQUIRE(job.spec.x0.size() == 3);
  CHECK(job.spec.x0(2) == 0.3);
}

TEST_CASE("time-series CSV has the documented header and precision") {
  const std::string path = temp_path("series.csv");
  Vector t(2);
  t << 0.0, 0.1;
  Matrix u(1, 2);
  u << 1.0, 0.0;
  Matrix y(2, 2);
  y << 0.123456789012345678, 1.0, 2.0, 3.0;
  Matrix e(2, 2);
  e << 0.0, 0.0, 1e-9, 2e-9;
  write_time_series_csv(path, t, u, y, &e);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,u1,y1,y2,e1,e2");
  std::string row;
  std::getline(in, row);
  // 17 significant digits preserve the double exactly.
  CHECK(row.find("0.12345678901234568") != std::string::npos);

  // Column counts must agree with t; rows are free per the header.
  Matrix e_bad(2, 1);
  e_bad << 0.0, 0.0;
  CHECK_THROWS_AS(write_time_series_csv(path, t, u, y, &e_bad),
                  DimensionError);
}

TEST_CASE("schema violations raise IoError") {
  const std::string path = temp_path("bad.json");
  std::ofstream(path) << "{\"format\": \"something-else\", \"version\": 1}";
  CHECK_THROWS_AS(load_model(path), IoError);

  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(load_model(path), IoError);

  CHECK_THROWS_AS(load_model(temp_path("missing-file.json")), IoError);

  // Ragged matrix rows are rejected, not zero-padded.
  std::ofstream(path)
      << "{\"format\": \"lpvred-model\", \"version\": 1, \"n\": 1, "
         "\"m\": 1, \"q\": 1, \"l\": 0, \"time\": \"continuous\", "
         "\"A\": [[[1.0],[2.0, 3.0]]], \"B\": [[[1.0]]], "
         "\"C\": [[[1.0]]], \"D\": [[[0.0]]], "
         "\"theta\": {\"lower\": [], \"upper\": []}}";
  CHECK_THROWS_AS(load_model(path), IoError);
}

TEST_SUITE_END();

}  // namespace
