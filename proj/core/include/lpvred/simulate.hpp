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

#pragma once

#include <cstdint>
#include <vector>

#include "lpvred/model.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// One piecewise-constant input segment.
struct InputSegment {
  Vector value;
  double duration = 0.0;
};

/// Time-simulation protocol at a frozen parameter. The input is the
/// segment sequence, then zero until t_final.
struct SimulationSpec {
  std::vector<InputSegment> segments;
  /// Non-positive: the total segment duration.
  double t_final = -1.0;
  /// Integration step for continuous models; non-positive picks
  /// 0.02 / rho(A(theta)), making the local truncation error of the
  /// fourth-order stages about 1e-9 relative per step. Segment
  /// boundaries subdivide exactly, so the step never crosses an input
  /// switch. Ignored for discrete models (exact recursion at the
  /// model step).
  double step = -1.0;
  /// Empty: a deterministic interior draw from theta_seed.
  Vector theta;
  std::uint64_t theta_seed = 42;
  /// Empty: zero initial state.
  Vector x0;
};

/// Columns are samples; t(k), u.col(k), y.col(k) belong together.
struct SimulationResult {
  Vector t;
  Matrix u;
  Matrix y;
  Vector theta;  ///< realized parameter
  double step = 0.0;
};

/// Input value at time t (right-continuous, zero past the segments).
Vector input_at(const SimulationSpec& spec, double t, Index m);

/// Fixed-step classic fourth-order integration for continuous models,
/// exact state recursion for discrete ones. Deterministic per spec.
/// @throws ConfigError on malformed segments or dimensions,
///         NumericalError when the state exceeds 1e12 (blow-up guard).
SimulationResult simulate(const AffineLpvModel& model,
                          const SimulationSpec& spec);

}  // namespace lpvred
