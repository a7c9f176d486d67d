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

#include <vector>

#include "lpvred/types.hpp"

namespace lpvred {

/// Orthonormal projection of the (l+1)-dimensional scheduling chart
/// [1, theta_1, ..., theta_l] onto an n_r-dimensional subspace.
///
/// The matrix T has l+1 rows, n_r orthonormal columns, and acts on
/// coefficient vectors c = [1, theta]: the reduced model evaluates its
/// blocks at T T^T c, which keeps it affine in the original theta.
class ParameterProjection {
 public:
  /// @throws ValidationError when columns deviate from orthonormality
  /// by more than tol (the deviation norm is reported in the message).
  explicit ParameterProjection(Matrix t, double tol = 1e-10);

  Index chart_dim() const { return t_.rows(); }   // l + 1
  Index n_r() const { return t_.cols(); }         // retained directions
  /// Reduction order: retained parameter directions beyond the
  /// constant one (n_r - 1). Sweeps and the CLI count in this unit.
  Index order() const { return t_.cols() - 1; }
  const Matrix& matrix() const { return t_; }
  Matrix projector() const { return t_ * t_.transpose(); }

  /// Image T T^T c of a chart coefficient vector.
  Vector project_coefficients(const Vector& c) const;

  /// Identity chart (no reduction), n_r = l + 1.
  static ParameterProjection identity(Index l);

  /// Constant direction e_0 only (the nominal model), n_r = 1.
  static ParameterProjection constant_only(Index l);

  /// Coordinate axes of the chart: axes entries index into 0..l, where
  /// 0 is the constant direction. Duplicates are rejected.
  static ParameterProjection axes(Index l, const std::vector<Index>& axes);

 private:
  Matrix t_;
};

}  // namespace lpvred
