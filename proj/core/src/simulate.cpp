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

#include "lpvred/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "lpvred/errors.hpp"

namespace lpvred {

namespace {

struct Span {
  double start = 0.0;
  double stop = 0.0;
  Vector value;
};

void check_segments(const SimulationSpec& spec, Index m) {
  for (const InputSegment& seg : spec.segments) {
    if (!(seg.duration > 0.0)) {
      throw ConfigError("segment durations must be positive");
    }
    if (seg.value.size() != m) {
      throw ConfigError("segment value dimension mismatch");
    }
  }
}

double final_time(const SimulationSpec& spec) {
  double total = 0.0;
  for (const InputSegment& seg : spec.segments) total += seg.duration;
  const double tf = spec.t_final > 0.0 ? spec.t_final : total;
  if (!(tf > 0.0)) {
    throw ConfigError("simulation needs segments or a positive t_final");
  }
  return tf;
}

/// Interval partition of [0, tf] with the active input per interval.
std::vector<Span> make_spans(const SimulationSpec& spec, double tf, Index m) {
  std::vector<Span> spans;
  double t0 = 0.0;
  for (const InputSegment& seg : spec.segments) {
    if (t0 >= tf) break;
    const double t1 = std::min(t0 + seg.duration, tf);
    spans.push_back({t0, t1, seg.value});
    t0 += seg.duration;
  }
  if (t0 < tf) spans.push_back({t0, tf, Vector::Zero(m)});
  return spans;
}

void guard_state(const Vector& x, double t) {
  if (!x.allFinite() || (x.size() > 0 && x.cwiseAbs().maxCoeff() > 1e12)) {
    std::ostringstream msg;
    msg << "state blow-up at t=" << t;
    throw NumericalError(msg.str());
  }
}

Vector resolve_theta(const AffineLpvModel& model, const SimulationSpec& spec) {
  if (model.l() == 0) return Vector(0);
  if (spec.theta.size() > 0) return spec.theta;
  return model.box().sample(1, spec.theta_seed)[0];
}

}  // namespace

Vector input_at(const SimulationSpec& spec, double t, Index m) {
  double cum = 0.0;
  for (const InputSegment& seg : spec.segments) {
    cum += seg.duration;
    if (t < cum) return seg.value;
  }
  return Vector::Zero(m);
}

SimulationResult simulate(const AffineLpvModel& model,
                          const SimulationSpec& spec) {
  const Index m = model.m();
  const Index q = model.q();
  check_segments(spec, m);
  const double tf = final_time(spec);

  SimulationResult out;
  out.theta = resolve_theta(model, spec);
  const LtiRealization sys = model.evaluate_at(out.theta);
  const Index n = sys.n();

  Vector x;
  if (spec.x0.size() == 0) {
    x = Vector::Zero(n);
  } else if (spec.x0.size() == n) {
    x = spec.x0;
  } else {
    throw DimensionError("initial state dimension mismatch");
  }

  if (model.time() == TimeKind::Discrete) {
    const double h = model.step();
    out.step = h;
    const Index count = static_cast<Index>(std::floor(tf / h + 1e-9)) + 1;
    out.t.resize(count);
    out.u.resize(m, count);
    out.y.resize(q, count);
    for (Index k = 0; k < count; ++k) {
      const double t = k * h;
      const Vector u = input_at(spec, t, m);
      out.t(k) = t;
      out.u.col(k) = u;
      out.y.col(k) = sys.C * x + sys.D * u;
      x = sys.A * x + sys.B * u;
      guard_state(x, t);
    }
    return out;
  }

  double h = spec.step;
  if (!(h > 0.0)) {
    double rho = 0.0;
    if (n > 0) {
      const Eigen::EigenSolver<Matrix> eig(sys.A, false);
      if (eig.info() != Eigen::Success) {
        throw NumericalError("eigenvalue computation failed");
      }
      rho = eig.eigenvalues().cwiseAbs().maxCoeff();
    }
    h = rho > 0.0 ? 0.02 / rho : tf / 1000.0;
  }
  h = std::min(h, tf);
  out.step = h;

  const std::vector<Span> spans = make_spans(spec, tf, m);
  Index count = 1;
  std::vector<Index> steps(spans.size());
  for (size_t s = 0; s < spans.size(); ++s) {
    const double len = spans[s].stop - spans[s].start;
    steps[s] = std::max<Index>(
        1, static_cast<Index>(std::ceil(len / h - 1e-9)));
    count += steps[s];
  }
  out.t.resize(count);
  out.u.resize(m, count);
  out.y.resize(q, count);

  Index k = 0;
  for (size_t s = 0; s < spans.size(); ++s) {
    const Span& span = spans[s];
    const double hs = (span.stop - span.start) / steps[s];
    const Vector bu = sys.B * span.value;
    const Vector du = sys.D * span.value;
    for (Index j = 0; j < steps[s]; ++j) {
      const double t = span.start + j * hs;
      out.t(k) = t;
      out.u.col(k) = span.value;
      out.y.col(k) = sys.C * x + du;
      ++k;
      const Vector k1 = sys.A * x + bu;
      const Vector k2 = sys.A * (x + 0.5 * hs * k1) + bu;
      const Vector k3 = sys.A * (x + 0.5 * hs * k2) + bu;
      const Vector k4 = sys.A * (x + hs * k3) + bu;
      x += hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      guard_state(x, t + hs);
    }
  }
  const Vector uf = input_at(spec, tf, m);
  out.t(k) = tf;
  out.u.col(k) = uf;
  out.y.col(k) = sys.C * x + sys.D * uf;
  return out;
}

}  // namespace lpvred
