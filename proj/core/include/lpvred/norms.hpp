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
#include <string>
#include <vector>

#include "lpvred/model.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// Hankel norm sqrt(lambda_max(P Q^T)) of a stable realization.
/// A stateless system has Hankel norm zero.
/// @throws StabilityError when the realization is unstable.
double hankel_norm(const LtiRealization& sys);

/// H-infinity norm. Continuous systems use level bisection with the
/// Hamiltonian imaginary-axis test, accelerated by peak probes at the
/// crossing-frequency midpoints; discrete systems are mapped through
/// the norm-preserving bilinear transform first. A stateless system
/// returns sigma_max(D).
/// @throws StabilityError when unstable, NumericalError when the
/// bisection fails to close.
double hinf_norm(const LtiRealization& sys, double rel_tol = 1e-4);

/// Largest singular value of the frequency response at omega
/// (continuous: s = i omega; discrete: z = exp(i omega step)).
double frequency_gain(const LtiRealization& sys, double omega);

/// Deterministic evaluation point set over a parameter box.
struct EvalSet {
  enum class Kind { Vertices, VerticesPlusSamples, Grid };
  Kind kind = Kind::VerticesPlusSamples;
  /// Interior Latin hypercube points added to the vertices.
  int samples = 200;
  std::uint64_t seed = 42;
  /// Points per axis for the Grid kind.
  int grid_per_axis = 11;

  /// @throws CapacityError when a grid would exceed 10^6 points.
  std::vector<Vector> points(const ParameterBox& box) const;

  /// Short human-readable descriptor for reports.
  std::string describe() const;
};

enum class PointNorm { Hankel, Hinf };

const char* to_string(PointNorm norm);

/// Supremum of a pointwise norm over the evaluation set, with its
/// attaining point: the p_{inf,H} and p_{inf,inf} measures.
struct ParametricNorm {
  double value = 0.0;
  Vector argmax;
  Index points = 0;
};

ParametricNorm p_norm(const AffineLpvModel& model, PointNorm norm,
                      const EvalSet& eval = {});

/// Relative parametric error between a model and a reduction sharing
/// its scheduling chart: p_{inf,inf}(model - reduced) over
/// p_{inf,inf}(model), evaluated pointwise on the shared set.
struct RelativePinfError {
  double numerator = 0.0;
  double denominator = 0.0;
  double value = 0.0;
  Vector argmax;  ///< point attaining the numerator
};

RelativePinfError relative_pinf_error(const AffineLpvModel& model,
                                      const AffineLpvModel& reduced,
                                      const EvalSet& eval = {});

}  // namespace lpvred
