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
#include <vector>

#include <doctest.h>

#include "lpvred/gramians.hpp"
#include "lpvred/hankel_reduce.hpp"
#include "lpvred/linalg.hpp"
#include "lpvred/model.hpp"
#include "lpvred/norms.hpp"
#include "test_helpers.hpp"

namespace {

using namespace lpvred;
using lpvred::testing::max_abs;

TEST_SUITE_BEGIN("hankel_reduce");

/// Handcrafted diagonal objective: f_P = f_Q = diag over the chart, so
/// the reference matrices are scalar multiples of the identity and
/// objectives can be computed by hand.
HankelObjective diagonal_objective() {
  // Chart dimension 3 (l = 2). f_P(c) = c_0 I for the constant block,
  // f_Q(c) = (c_0 + c_1) I: per point the coupled product is
  // c_0 (c_0 + c_1) I.
  std::vector<Matrix> p_blocks = {Matrix::Identity(2, 2),
                                  Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  std::vector<Matrix> q_blocks = {Matrix::Identity(2, 2),
                                  Matrix::Identity(2, 2),
                                  Matrix::Zero(2, 2)};
  std::vector<Vector> pts;
  Vector c(3);
  c << 1.0, 0.0, 0.0;
  pts.push_back(c);
  c << 1.0, 1.0, 0.0;
  pts.push_back(c);
  c << 1.0, 0.0, 1.0;
  pts.push_back(c);
  c << 1.0, 1.0, 1.0;
  pts.push_back(c);
  return HankelObjective(std::move(p_blocks), std::move(q_blocks),
                         std::move(pts));
}

TEST_CASE("the identity projection has zero objective") {
  const HankelObjective obj = diagonal_objective();
  CHECK(obj.chart_dim() == 3);
  CHECK(obj.point_count() == 4);
  CHECK(obj.objective(Matrix::Identity(3, 3)) <= 1e-14);
}

TEST_CASE("hand-computed objective for an axis selection") {
  const HankelObjective obj = diagonal_objective();
  // Keep {e_0, e_2}: the projector zeroes c_1, changing the reference
  // c_0 (c_0 + c_1) I into c_0^2 I. Worst gap over the four chart
  // points is |1*(1+1) - 1| = 1 at the c_1 = 1 corners.
  Matrix t = Matrix::Zero(3, 2);
  t(0, 0) = 1.0;
  t(2, 1) = 1.0;
  CHECK(obj.objective(t) == doctest::Approx(1.0).epsilon(1e-12));
  // Keeping {e_0, e_1} preserves the product exactly.
  Matrix keep = Matrix::Zero(3, 2);
  keep(0, 0) = 1.0;
  keep(1, 1) = 1.0;
  CHECK(obj.objective(keep) <= 1e-14);
}

TEST_CASE("smoothed objective and gradient agree with finite differences") {
  const HankelObjective obj = diagonal_objective();
  auto rng = make_rng(4);
  const Matrix t = random_orthonormal(3, 2, rng);
  Matrix grad;
  const double tau = 1e-2;
  const double f0 = obj.smooth_objective(t, tau, grad);
  CHECK(f0 >= 0.0);
  const double h = 1e-6;
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 2; ++j) {
      Matrix tp = t;
      tp(i, j) += h;
      Matrix tm = t;
      tm(i, j) -= h;
      Matrix unused;
      const double fp = obj.smooth_objective(tp, tau, unused);
      const double fm = obj.smooth_objective(tm, tau, unused);
      const double fd = (fp - fm) / (2.0 * h);
      CHECK(grad(i, j) == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("full-order optimization returns the identity immediately") {
  const HankelObjective obj = diagonal_objective();
  const HankelReduceResult result = optimize_projection(obj, 2);
  CHECK(result.objective <= 1e-12);
  CHECK(result.start_label == "identity");
  CHECK(result.projection.matrix().isApprox(Matrix::Identity(3, 3)));
}

TEST_CASE("the optimizer finds the informative axis pair") {
  const HankelObjective obj = diagonal_objective();
  const HankelReduceResult result = optimize_projection(obj, 1);
  // {e_0, e_1} reproduces the product exactly, so the optimum is 0.
  CHECK(result.objective <= 1e-10);
  CHECK(result.projection.n_r() == 2);
  // The projector must preserve span{e_0, e_1}.
  const Matrix pi =
      result.projection.matrix() * result.projection.matrix().transpose();
  Vector e0 = Vector::Zero(3);
  e0(0) = 1.0;
  Vector e1 = Vector::Zero(3);
  e1(1) = 1.0;
  CHECK(max_abs(Matrix((pi * e0 - e0))) <= 1e-8);
  CHECK(max_abs(Matrix((pi * e1 - e1))) <= 1e-8);
}

TEST_CASE("order sweep objectives are non-increasing in the order") {
  const AffineLpvModel model = testing::random_unstructured_model(21, 6, 2, 2, 3);
  // Synthesis needs stability; shift enough for the whole box.
  std::vector<Matrix> as = model.a_blocks();
  as[0] -= 8.0 * Matrix::Identity(6, 6);
  const AffineLpvModel stable(as, model.b_blocks(), model.c_blocks(),
                              model.d_blocks(), model.box());
  const auto [p, q] = synthesize_gramian_pair(stable);
  const HankelObjective obj(stable, p, q);
  const std::vector<Index> orders = {0, 1, 2, 3};
  const std::vector<HankelReduceResult> sweep = hankel_order_sweep(obj, orders);
  REQUIRE(sweep.size() == 4);
  for (std::size_t i = 1; i < sweep.size(); ++i)
    CHECK(sweep[i].objective <= sweep[i - 1].objective + 1e-12);
  CHECK(sweep[3].objective <= 1e-10);  // full order keeps the chart
  for (const HankelReduceResult& r : sweep) {
    const Matrix t = r.projection.matrix();
    CHECK(max_abs(Matrix(t.transpose() * t -
                         Matrix::Identity(t.cols(), t.cols()))) <= 1e-10);
  }
}

TEST_CASE("extra warm-start frames join the pool and can win") {
  const HankelObjective obj = diagonal_objective();
  // Hand the optimizer the known optimum and disable its own starts;
  // only axis selections and the extra frame remain.
  Matrix best = Matrix::Zero(3, 2);
  best(0, 0) = 1.0;
  best(1, 1) = 1.0;
  HankelReduceOptions options;
  options.n_starts = 0;
  options.max_iters = 0;  // no descent: the pool entry must stand alone
  options.extra_starts = {best};
  const HankelReduceResult result = optimize_projection(obj, 1, options);
  CHECK(result.objective <= 1e-12);

  // A wider frame is truncated to its leading columns.
  Matrix wide = Matrix::Identity(3, 3);
  options.extra_starts = {wide};
  const HankelReduceResult trunc = optimize_projection(obj, 1, options);
  CHECK(trunc.objective <= 1e-12);

  // Narrower frames are skipped without error.
  Matrix narrow = Matrix::Zero(3, 1);
  narrow(0, 0) = 1.0;
  options.extra_starts = {narrow};
  CHECK_NOTHROW(optimize_projection(obj, 1, options));
}

TEST_CASE("subsystem ranking scores an inert parameter zero") {
  // Parameter 2 has all-zero blocks, so freezing it changes nothing.
  auto rng = make_rng(15);
  std::vector<Matrix> as, bs, cs, ds;
  as.push_back(Matrix(testing::gaussian(3, 3, rng) -
                      7.0 * Matrix::Identity(3, 3)));
  bs.push_back(testing::gaussian(3, 1, rng));
  cs.push_back(testing::gaussian(1, 3, rng));
  ds.push_back(Matrix::Zero(1, 1));
  as.push_back(Matrix(0.4 * testing::gaussian(3, 3, rng)));
  bs.push_back(Matrix(0.4 * testing::gaussian(3, 1, rng)));
  cs.push_back(Matrix(0.4 * testing::gaussian(1, 3, rng)));
  ds.push_back(Matrix::Zero(1, 1));
  as.push_back(Matrix::Zero(3, 3));
  bs.push_back(Matrix::Zero(3, 1));
  cs.push_back(Matrix::Zero(1, 3));
  ds.push_back(Matrix::Zero(1, 1));
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(2));

  const SubsystemRanking ranking = subsystem_hankel_ranking(model);
  REQUIRE(ranking.scores.size() == 2);
  // The frozen difference cancels only to the accuracy of the stacked
  // Gramian solves, so "zero" means rounding scale here.
  CHECK(ranking.scores(1) <= 1e-7);
  CHECK(ranking.scores(0) > 1e-3);
  CHECK(ranking.order[0] == 0);  // influential parameter ranked first
  CHECK(ranking.order[1] == 1);

  // Keeping one parameter keeps the influential axis.
  const ParameterProjection proj = subsystem_projection(ranking, 1);
  CHECK(proj.n_r() == 2);
  const Matrix t = proj.matrix();
  CHECK(t(0, 0) == doctest::Approx(1.0));
  CHECK(t(1, 1) == doctest::Approx(1.0));
  CHECK(t(2, 1) == doctest::Approx(0.0));
}

TEST_CASE("subsystem scores match direct frozen-difference Hankel norms") {
  const AffineLpvModel model = testing::random_discrete_model(31, 4, 1, 1, 2);
  const SubsystemRanking ranking = subsystem_hankel_ranking(model);
  const Vector center = model.box().center();
  for (Index i = 0; i < 2; ++i) {
    Vector value(1);
    value << center(i);
    const AffineLpvModel frozen =
        freeze_parameters(model, {i}, value);
    double worst = 0.0;
    for (const Vector& v : model.box().vertices()) {
      const double h = hankel_norm(
          difference_model(model, frozen).evaluate_at(v));
      worst = std::max(worst, h);
    }
    CHECK(ranking.scores(i) == doctest::Approx(worst).epsilon(1e-9));
  }
}

TEST_SUITE_END();

}  // namespace
