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

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"
#include "lpvred/parameter_box.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/rng.hpp"
#include "test_helpers.hpp"

using namespace lpvred;
using lpvred::testing::max_abs;

TEST_SUITE_BEGIN("foundations");

TEST_CASE("svec column-major lower triangle with sqrt2 off-diagonals") {
  Matrix s(2, 2);
  s << 3.0, -1.0, -1.0, 5.0;
  const Vector v = svec(s);
  REQUIRE(v.size() == 3);
  CHECK(v(0) == doctest::Approx(3.0));
  CHECK(v(1) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(v(2) == doctest::Approx(5.0));
}

TEST_CASE("svec and smat invert each other and preserve inner products") {
  Rng rng = make_rng(11);
  for (int k = 0; k < 20; ++k) {
    const Matrix x = symmetrize(random_gaussian(5, 5, rng));
    const Matrix y = symmetrize(random_gaussian(5, 5, rng));
    CHECK(max_abs(Matrix(smat(svec(x)) - x)) < 1e-14);
    CHECK(svec(x).dot(svec(y)) ==
          doctest::Approx((x * y).trace()).epsilon(1e-12));
  }
}

TEST_CASE("spectral norm equals the largest singular value") {
  Matrix d = Matrix::Zero(2, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  CHECK(spectral_norm(d) == doctest::Approx(4.0));
  CHECK(spectral_norm(Matrix::Zero(2, 2)) == doctest::Approx(0.0));
}

TEST_CASE("coupled_max_eigenvalue matches a direct eigensolve") {
  Rng rng = make_rng(5);
  for (int k = 0; k < 10; ++k) {
    const Matrix gp = random_gaussian(4, 4, rng);
    const Matrix gq = random_gaussian(4, 4, rng);
    const Matrix p = gp * gp.transpose();
    const Matrix q = gq * gq.transpose();
    const Eigen::EigenSolver<Matrix> es(p * q.transpose(), false);
    const double direct = es.eigenvalues().real().maxCoeff();
    CHECK(coupled_max_eigenvalue(p, q) ==
          doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("principal angles separate identical and orthogonal spans") {
  Matrix u(3, 1), v(3, 1);
  u << 1, 0, 0;
  v << 0, 1, 0;
  CHECK(max_principal_angle(u, u) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_principal_angle(u, v) ==
        doctest::Approx(std::acos(0.0)).epsilon(1e-12));
}

TEST_CASE("orthonormalize returns an orthonormal basis of the same span") {
  Rng rng = make_rng(7);
  const Matrix m = random_gaussian(5, 2, rng);
  const Matrix t = orthonormalize(m);
  CHECK(max_abs(Matrix(t.transpose() * t - Matrix::Identity(2, 2))) < 1e-12);
  CHECK(max_principal_angle(m, t) < 1e-10);
}

TEST_CASE("stability predicates on known matrices") {
  Matrix a(2, 2);
  a << -1.0, 5.0, 0.0, -0.1;
  CHECK(is_hurwitz(a));
  CHECK_FALSE(is_hurwitz(-a));
  CHECK(is_schur(0.5 * Matrix::Identity(2, 2)));
  CHECK_FALSE(is_schur(1.5 * Matrix::Identity(2, 2)));
}

TEST_CASE("seeded rng streams are deterministic and distinct") {
  Rng a = make_rng(42);
  Rng b = make_rng(42);
  CHECK(a() == b());
  CHECK(derive_seed(42, 1) != derive_seed(42, 2));
  Rng c = make_rng(derive_seed(42, 1));
  Rng d = make_rng(derive_seed(42, 2));
  CHECK(c() != d());
}

TEST_CASE("random_orthonormal frames are orthonormal") {
  Rng rng = make_rng(3);
  const Matrix t = random_orthonormal(6, 3, rng);
  CHECK(max_abs(Matrix(t.transpose() * t - Matrix::Identity(3, 3))) < 1e-12);
}

TEST_CASE("parameter box validation and geometry") {
  Vector lo(2), hi(2);
  lo << 0.0, -1.0;
  hi << 1.0, 3.0;
  const ParameterBox box(lo, hi);
  CHECK(box.dim() == 2);
  CHECK(box.center()(1) == doctest::Approx(1.0));
  CHECK(box.width()(1) == doctest::Approx(4.0));
  CHECK_FALSE(box.is_unit());
  CHECK(ParameterBox::unit(3).is_unit());
  CHECK_THROWS_AS(ParameterBox(hi, lo), ValidationError);
}

TEST_CASE("vertices enumerate corners lexicographically, first axis most "
          "significant") {
  const ParameterBox box = ParameterBox::unit(2);
  const auto v = box.vertices();
  REQUIRE(v.size() == 4);
  CHECK(v[0].isApprox(Vector::Zero(2)));
  CHECK(v[1](0) == 0.0);
  CHECK(v[1](1) == 1.0);
  CHECK(v[2](0) == 1.0);
  CHECK(v[2](1) == 0.0);
  CHECK(v[3].isApprox(Vector::Ones(2)));

  const auto empty = ParameterBox::unit(0).vertices();
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].size() == 0);
}

TEST_CASE("vertex enumeration refuses boxes beyond 24 axes") {
  CHECK_THROWS_AS(ParameterBox::unit(25).vertices(), CapacityError);
}

TEST_CASE("interior samples stay inside and are seed-deterministic") {
  const ParameterBox box = ParameterBox::unit(3);
  const auto a = box.sample(40, 9);
  const auto b = box.sample(40, 9);
  REQUIRE(a.size() == 40);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(box.contains(a[k]));
    CHECK(a[k].isApprox(b[k]));
  }
  CHECK_FALSE(box.sample(1, 9)[0].isApprox(box.sample(1, 10)[0]));
}

TEST_CASE("containment and the named-violation check") {
  const ParameterBox box = ParameterBox::unit(2);
  Vector theta(2);
  theta << 0.5, 1.5;
  CHECK_FALSE(box.contains(theta));
  CHECK_THROWS_AS(box.require_inside(theta), DomainError);
}

TEST_CASE("rate bounds validate and round-trip") {
  ParameterBox box = ParameterBox::unit(2);
  CHECK_FALSE(box.has_rate_bounds());
  Vector r(2);
  r << 0.5, 0.2;
  box.set_rate_bounds(-r, r);
  CHECK(box.has_rate_bounds());
  CHECK(box.rate_upper()(1) == doctest::Approx(0.2));
  CHECK_THROWS_AS(box.set_rate_bounds(r, -r), ValidationError);
  box.clear_rate_bounds();
  CHECK_FALSE(box.has_rate_bounds());
}

TEST_CASE("projection constructor enforces orthonormal columns") {
  Matrix t(3, 2);
  t << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(ParameterProjection{t}, ValidationError);
}

TEST_CASE("canonical projections have the documented shape") {
  const ParameterProjection id = ParameterProjection::identity(2);
  CHECK(id.chart_dim() == 3);
  CHECK(id.n_r() == 3);
  CHECK(id.order() == 2);
  CHECK(max_abs(Matrix(id.matrix() - Matrix::Identity(3, 3))) == 0.0);

  const ParameterProjection nominal = ParameterProjection::constant_only(2);
  CHECK(nominal.n_r() == 1);
  CHECK(nominal.matrix()(0, 0) == 1.0);
  CHECK(nominal.matrix()(1, 0) == 0.0);

  const ParameterProjection ax = ParameterProjection::axes(3, {0, 2});
  CHECK(ax.n_r() == 2);
  CHECK(ax.matrix()(2, 1) == 1.0);
  CHECK_THROWS_AS(ParameterProjection::axes(3, {0, 0}), ValidationError);
}

TEST_CASE("axis charts mask coefficients") {
  const ParameterProjection ax = ParameterProjection::axes(2, {0, 1});
  Vector c(3);
  c << 1.0, 0.3, 0.9;
  const Vector pc = ax.project_coefficients(c);
  CHECK(pc(0) == doctest::Approx(1.0));
  CHECK(pc(1) == doctest::Approx(0.3));
  CHECK(pc(2) == doctest::Approx(0.0));
}

TEST_SUITE_END();
