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
#include <string>
#include <vector>

#include <doctest.h>

#include "lpvred/errors.hpp"
#include "lpvred/norms.hpp"
#include "test_helpers.hpp"

namespace {

using namespace lpvred;

TEST_SUITE_BEGIN("norms");

LtiRealization scalar_lag() {
  LtiRealization sys;
  sys.A = Matrix::Constant(1, 1, -1.0);
  sys.B = Matrix::Constant(1, 1, 1.0);
  sys.C = Matrix::Constant(1, 1, 1.0);
  sys.D = Matrix::Zero(1, 1);
  return sys;
}

TEST_CASE("scalar lag: Hankel 1/2, H-infinity 1") {
  const LtiRealization sys = scalar_lag();
  // P = Q = 1/2, so the Hankel norm is 1/2; the peak gain sits at
  // omega = 0 with |1/(1+iw)| = 1 there.
  CHECK(hankel_norm(sys) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(hinf_norm(sys, 1e-8) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(frequency_gain(sys, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frequency_gain(sys, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("balanced diagonal realization exposes its singular values") {
  // Two decoupled SISO sections a = -1, b = c = sqrt(2 sigma) in
  // separate channels have P = Q = diag(sigma); the Hankel norm is
  // the largest sigma and the peak gain doubles it at omega = 0.
  const double s1 = 2.0;
  const double s2 = 1.0;
  LtiRealization sys;
  sys.A = -Matrix::Identity(2, 2);
  sys.B = Matrix::Zero(2, 2);
  sys.B(0, 0) = std::sqrt(2.0 * s1);
  sys.B(1, 1) = std::sqrt(2.0 * s2);
  sys.C = sys.B.transpose();
  sys.D = Matrix::Zero(2, 2);
  CHECK(hankel_norm(sys) == doctest::Approx(s1).epsilon(1e-10));
  CHECK(hinf_norm(sys, 1e-8) == doctest::Approx(2.0 * s1).epsilon(1e-7));
}

TEST_CASE("resonant second-order peak matches the damping formula") {
  const double zeta = 0.1;
  // x'' + 2 zeta x' + x = u, y = x: peak gain 1/(2 zeta sqrt(1-zeta^2)).
  LtiRealization sys;
  sys.A = Matrix::Zero(2, 2);
  sys.A(0, 1) = 1.0;
  sys.A(1, 0) = -1.0;
  sys.A(1, 1) = -2.0 * zeta;
  sys.B = Matrix::Zero(2, 1);
  sys.B(1, 0) = 1.0;
  sys.C = Matrix::Zero(1, 2);
  sys.C(0, 0) = 1.0;
  sys.D = Matrix::Zero(1, 1);
  const double peak = 1.0 / (2.0 * zeta * std::sqrt(1.0 - zeta * zeta));
  CHECK(hinf_norm(sys, 1e-9) == doctest::Approx(peak).epsilon(1e-7));
  const double w_peak = std::sqrt(1.0 - 2.0 * zeta * zeta);
  CHECK(frequency_gain(sys, w_peak) == doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("discrete H-infinity peaks at z = 1 for a positive lag") {
  // h(z) = 1/(z - 1/2): peak |h| = 2 at z = 1 (omega = 0).
  LtiRealization sys;
  sys.A = Matrix::Constant(1, 1, 0.5);
  sys.B = Matrix::Constant(1, 1, 1.0);
  sys.C = Matrix::Constant(1, 1, 1.0);
  sys.D = Matrix::Zero(1, 1);
  sys.time = TimeKind::Discrete;
  sys.step = 0.25;
  CHECK(hinf_norm(sys, 1e-8) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(frequency_gain(sys, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  // Nyquist point z = -1 gives the smallest gain 1/(3/2).
  const double nyquist = 3.14159265358979323846 / sys.step;
  CHECK(frequency_gain(sys, nyquist) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(hankel_norm(sys) > 0.0);
}

TEST_CASE("stateless and zero systems behave at the limits") {
  LtiRealization gain;
  gain.A = Matrix::Zero(0, 0);
  gain.B = Matrix::Zero(0, 2);
  gain.C = Matrix::Zero(1, 0);
  gain.D = Matrix::Ones(1, 2);
  CHECK(hankel_norm(gain) == 0.0);
  CHECK(hinf_norm(gain) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // A dynamic system whose C is zero is functionally zero; the norm
  // must collapse to machine scale rather than a bisection floor.
  LtiRealization zero = scalar_lag();
  zero.C = Matrix::Zero(1, 1);
  CHECK(hinf_norm(zero, 1e-6) <= 1e-12);
  CHECK(hankel_norm(zero) <= 1e-12);
}

TEST_CASE("unstable systems are rejected") {
  LtiRealization sys = scalar_lag();
  sys.A = Matrix::Constant(1, 1, 0.2);
  CHECK_THROWS_AS(hankel_norm(sys), StabilityError);
  CHECK_THROWS_AS(hinf_norm(sys), StabilityError);
}

TEST_CASE("evaluation sets enumerate the advertised points") {
  const ParameterBox box = ParameterBox::unit(2);

  EvalSet verts;
  verts.kind = EvalSet::Kind::Vertices;
  CHECK(verts.points(box).size() == 4);

  EvalSet mixed;
  mixed.kind = EvalSet::Kind::VerticesPlusSamples;
  mixed.samples = 10;
  const std::vector<Vector> pts = mixed.points(box);
  CHECK(pts.size() == 14);
  // Vertices come first, in lexicographic order.
  CHECK(pts[0].isApprox(Vector::Zero(2)));
  CHECK(pts[3].isApprox(Vector::Ones(2)));
  for (const Vector& p : pts) CHECK(box.contains(p));

  EvalSet grid;
  grid.kind = EvalSet::Kind::Grid;
  grid.grid_per_axis = 3;
  const std::vector<Vector> gpts = grid.points(box);
  CHECK(gpts.size() == 9);
  // First axis most significant, like the vertex order.
  CHECK(gpts[1](0) == doctest::Approx(0.0));
  CHECK(gpts[1](1) == doctest::Approx(0.5));
  CHECK(gpts[3](0) == doctest::Approx(0.5));
  CHECK(gpts[3](1) == doctest::Approx(0.0));

  EvalSet huge;
  huge.kind = EvalSet::Kind::Grid;
  huge.grid_per_axis = 1001;
  CHECK_THROWS_AS(huge.points(ParameterBox::unit(3)), CapacityError);

  CHECK(mixed.describe().find("10") != std::string::npos);
}

TEST_CASE("parametric norms reduce to the pointwise norm for l = 0") {
  std::vector<Matrix> as = {Matrix::Constant(1, 1, -1.0)};
  std::vector<Matrix> bs = {Matrix::Constant(1, 1, 1.0)};
  std::vector<Matrix> cs = {Matrix::Constant(1, 1, 1.0)};
  std::vector<Matrix> ds = {Matrix::Zero(1, 1)};
  const AffineLpvModel model(as, bs, cs, ds, ParameterBox::unit(0));
  EvalSet eval;
  eval.kind = EvalSet::Kind::Vertices;
  const ParametricNorm ph = p_norm(model, PointNorm::Hankel, eval);
  CHECK(ph.value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ph.points == 1);
  const ParametricNorm pi = p_norm(model, PointNorm::Hinf, eval);
  CHECK(pi.value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("parametric norm argmax is a point of the evaluation set") {
  const AffineLpvModel model = testing::random_discrete_model(9, 4, 2, 2, 2);
  EvalSet eval;
  eval.samples = 20;
  eval.seed = 5;
  const ParametricNorm norm = p_norm(model, PointNorm::Hinf, eval);
  CHECK(norm.points == 24);
  CHECK(norm.value > 0.0);
  bool found = false;
  for (const Vector& p : eval.points(model.box()))
    if ((p - norm.argmax).cwiseAbs().maxCoeff() == 0.0) found = true;
  CHECK(found);
  // The supremum dominates the norm at any single set point.
  const double at_center =
      hinf_norm(model.evaluate_at(model.box().center()));
  CHECK(norm.value >= at_center - 1e-9);
}

TEST_CASE("a model compared against itself has zero relative error") {
  const AffineLpvModel model = testing::random_discrete_model(3, 5, 2, 2, 2);
  EvalSet eval;
  eval.samples = 8;
  const RelativePinfError err = relative_pinf_error(model, model, eval);
  CHECK(err.denominator > 0.0);
  CHECK(err.value <= 1e-12);
}

TEST_CASE("norm names are stable") {
  CHECK(std::string(to_string(PointNorm::Hankel)) == "hankel");
  CHECK(std::string(to_string(PointNorm::Hinf)) == "hinf");
}

TEST_SUITE_END();

}  // namespace
