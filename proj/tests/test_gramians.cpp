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
#include <cstddef>
#include <vector>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "lpvred/errors.hpp"
#include "lpvred/gramians.hpp"
#include "lpvred/lyapunov.hpp"
#include "lpvred/model.hpp"
#include "test_helpers.hpp"

namespace {

using namespace lpvred;
using lpvred::testing::max_abs;

TEST_SUITE_BEGIN("gramians");

/// Stable one-parameter test model with mild parameter variation.
AffineLpvModel one_parameter_model() {
  Matrix a0(2, 2), a1(2, 2);
  a0 << -2.0, 0.5, 0.0, -1.5;
  a1 << -0.3, 0.1, 0.2, -0.4;
  Matrix b0(2, 1), b1(2, 1);
  b0 << 1.0, 0.5;
  b1 << 0.2, -0.1;
  Matrix c0(1, 2), c1(1, 2);
  c0 << 1.0, -1.0;
  c1 << 0.1, 0.2;
  std::vector<Matrix> as = {a0, a1};
  std::vector<Matrix> bs = {b0, b1};
  std::vector<Matrix> cs = {c0, c1};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
  return AffineLpvModel(as, bs, cs, ds, ParameterBox::unit(1));
}

TEST_CASE("exact Gramians of the scalar lag are 1/2") {
  LtiRealization sys;
  sys.A = Matrix::Constant(1, 1, -1.0);
  sys.B = Matrix::Constant(1, 1, 1.0);
  sys.C = Matrix::Constant(1, 1, 1.0);
  sys.D = Matrix::Zero(1, 1);
  const GramianPair pair = exact_gramians(sys);
  CHECK(pair.p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pair.q(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact Gramians use the Stein equation for discrete systems") {
  // a = 1/2, b = 1: P = sum_k a^{2k} = 4/3.
  LtiRealization sys;
  sys.A = Matrix::Constant(1, 1, 0.5);
  sys.B = Matrix::Constant(1, 1, 1.0);
  sys.C = Matrix::Constant(1, 1, 1.0);
  sys.D = Matrix::Zero(1, 1);
  sys.time = TimeKind::Discrete;
  sys.step = 0.1;
  const GramianPair pair = exact_gramians(sys);
  CHECK(pair.p(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(pair.q(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("exact Gramians reject unstable realizations") {
  LtiRealization sys;
  sys.A = Matrix::Constant(1, 1, 0.5);
  sys.B = Matrix::Constant(1, 1, 1.0);
  sys.C = Matrix::Constant(1, 1, 1.0);
  sys.D = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(exact_gramians(sys), StabilityError);
}

TEST_CASE("LMI family sizes match the catalog exactly for l = 1..5") {
  auto rng = make_rng(77);
  for (Index l = 1; l <= 5; ++l) {
    std::vector<Matrix> as, bs, cs, ds;
    as.push_back(Matrix(testing::gaussian(3, 3, rng) -
                        6.0 * Matrix::Identity(3, 3)));
    bs.push_back(testing::gaussian(3, 1, rng));
    cs.push_back(testing::gaussian(1, 3, rng));
    ds.push_back(Matrix::Zero(1, 1));
    for (Index i = 0; i < l; ++i) {
      as.push_back(Matrix(0.1 * testing::gaussian(3, 3, rng)));
      bs.push_back(Matrix(0.1 * testing::gaussian(3, 1, rng)));
      cs.push_back(Matrix(0.1 * testing::gaussian(1, 3, rng)));
      ds.push_back(Matrix::Zero(1, 1));
    }
    ParameterBox box = ParameterBox::unit(l);
    box.set_rate_bounds(Vector::Constant(l, -1.0), Vector::Constant(l, 1.0));
    const AffineLpvModel model(as, bs, cs, ds, box);

    const std::size_t two_l1 = std::size_t{1} << (l + 1);
    const LmiProblem stat =
        build_static_lmis(model, GramianKind::Controllability);
    CHECK(stat.constraint_count() == two_l1);
    CHECK(stat.catalog_count == two_l1);

    const LmiProblem rate = build_rate_bounded_lmis(
        model, GramianKind::Controllability, /*enforce_block_positivity=*/true);
    CHECK(rate.constraint_count() == two_l1 + static_cast<std::size_t>(l));
    CHECK(rate.catalog_count == two_l1 + static_cast<std::size_t>(l));

    // Without block positivity every rate corner is kept; the catalog
    // quotes the 3^(l+1) multiplier convention.
    const LmiProblem plain = build_rate_bounded_lmis(
        model, GramianKind::Controllability,
        /*enforce_block_positivity=*/false);
    std::size_t three_l1 = 1;
    for (Index i = 0; i <= l; ++i) three_l1 *= 3;
    CHECK(plain.catalog_count == three_l1);
    const std::size_t per_vertex = (std::size_t{1} << l) + 1;
    CHECK(plain.constraint_count() == (std::size_t{1} << l) * per_vertex);
  }
}

TEST_CASE("rate-bounded synthesis requires rate bounds") {
  const AffineLpvModel model = one_parameter_model();
  CHECK_THROWS_AS(build_rate_bounded_lmis(model, GramianKind::Controllability,
                                          true),
                  ConfigError);
}

TEST_CASE("discrete models are rejected by the LMI builders") {
  Matrix a = Matrix::Constant(1, 1, 0.5);
  std::vector<Matrix> as = {a};
  std::vector<Matrix> bs = {Matrix::Constant(1, 1, 1.0)};
  std::vector<Matrix> cs = {Matrix::Constant(1, 1, 1.0)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1)};
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(0),
                             TimeKind::Discrete, 0.1);
  CHECK_THROWS_AS(build_static_lmis(model, GramianKind::Controllability),
                  ConfigError);
}

TEST_CASE("zero-parameter synthesis reproduces the Lyapunov optimum") {
  Matrix a(2, 2);
  a << -1.0, 0.5, 0.0, -3.0;
  Matrix b(2, 1);
  b << 1.0, 2.0;
  std::vector<Matrix> as = {a};
  std::vector<Matrix> bs = {b};
  std::vector<Matrix> cs = {Matrix::Identity(2, 2)};
  std::vector<Matrix> ds = {Matrix::Zero(2, 1)};
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(0));

  const AffineGramian bound =
      synthesize_gramian(model, GramianKind::Controllability);
  CHECK(bound.status == SdpStatus::Optimal);
  CHECK(bound.box_certified);
  const Matrix w =
      b * b.transpose() + bound.delta * Matrix::Identity(2, 2);
  const Matrix optimum = solve_continuous_lyapunov(a, w).X;
  CHECK(max_abs(Matrix(bound.blocks[0] - optimum)) <= 1e-6);
}

TEST_CASE("synthesized bounds dominate exact Gramians over the box") {
  const AffineLpvModel model = one_parameter_model();
  const auto [p, q] = synthesize_gramian_pair(model);
  CHECK(p.kind == GramianKind::Controllability);
  CHECK(q.kind == GramianKind::Observability);
  CHECK(p.box_certified);
  CHECK(q.box_certified);
  CHECK(p.margin > 0.0);
  CHECK(q.margin > 0.0);

  const BoundCheck pc = verify_upper_bound(model, p, 100, 7);
  CHECK(pc.points == 102);  // 2 vertices + 100 samples
  CHECK(pc.violations == 0);
  CHECK(pc.worst_rel_gap >= -1e-8);

  const BoundCheck qc = verify_upper_bound(model, q, 100, 7);
  CHECK(qc.violations == 0);

  const HankelBoundCheck hc = verify_hankel_bound(model, p, q, 100, 7);
  CHECK(hc.points == 102);
  CHECK(hc.violations == 0);
  CHECK(hc.worst_ratio <= 1.0 + 1e-8);
  CHECK(hc.max_bound >= hc.max_exact);
}

TEST_CASE("rate-bounded synthesis succeeds and marks the result") {
  Matrix a0(2, 2), a1(2, 2);
  a0 << -2.0, 0.5, 0.0, -1.5;
  a1 << -0.3, 0.1, 0.2, -0.4;
  Matrix b0(2, 1), b1(2, 1);
  b0 << 1.0, 0.5;
  b1 << 0.2, -0.1;
  std::vector<Matrix> as = {a0, a1};
  std::vector<Matrix> bs = {b0, b1};
  std::vector<Matrix> cs = {Matrix::Ones(1, 2), Matrix::Zero(1, 2)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
  ParameterBox box = ParameterBox::unit(1);
  box.set_rate_bounds(Vector::Constant(1, -0.5), Vector::Constant(1, 0.5));
  const AffineLpvModel model(as, bs, cs, ds, box);

  GramianSynthesisOptions options;
  options.rate_bounded = true;
  const AffineGramian bound =
      synthesize_gramian(model, GramianKind::Controllability, options);
  CHECK(bound.rate_bounded);
  CHECK(bound.margin > 0.0);
  // Block positivity makes the parameter block itself semidefinite.
  Eigen::SelfAdjointEigenSolver<Matrix> es(bound.blocks[1]);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  // The static-parameter bound still holds pointwise.
  const BoundCheck check = verify_upper_bound(model, bound, 50, 3);
  CHECK(check.violations == 0);
}

TEST_CASE("affine bound evaluation is linear in the chart coefficients") {
  const AffineLpvModel model = one_parameter_model();
  const AffineGramian bound =
      synthesize_gramian(model, GramianKind::Observability);
  CHECK(bound.l() == 1);
  CHECK(bound.n() == 2);
  Vector theta(1);
  theta << 0.37;
  const Matrix direct = bound.blocks[0] + 0.37 * bound.blocks[1];
  CHECK(max_abs(Matrix(bound.evaluate(theta) - direct)) <= 1e-15);
  Vector coeff(2);
  coeff << 2.0, -0.5;
  const Matrix chart = 2.0 * bound.blocks[0] - 0.5 * bound.blocks[1];
  CHECK(max_abs(Matrix(bound.evaluate_chart(coeff) - chart)) <= 1e-15);
}

TEST_SUITE_END();

}  // namespace
