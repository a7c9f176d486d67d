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

#include "lpvred/types.hpp"

namespace lpvred {

/// Solution of a Lyapunov-type equation with quality diagnostics.
struct LyapunovSolution {
  Matrix X;
  /// |residual|_F / max(1, |W|_F) of the defining equation.
  double residual = 0.0;
  /// Eigenvalue separation min |lambda_i + conj(lambda_j)| (continuous
  /// convention; the discrete path reports the transformed pencil's).
  double separation = 0.0;
  /// Set when the operator is close to singular or the residual is poor.
  bool ill_conditioned = false;
};

/// Solves A X + X A^T + W = 0 by real Schur reduction and quasi-
/// triangular back-substitution. W need not be definite; a symmetric W
/// yields a symmetric X.
/// @throws NumericalError when lambda_i(A) + lambda_j(A) ~ 0 makes the
/// operator singular.
LyapunovSolution solve_continuous_lyapunov(const Matrix& a, const Matrix& w);

/// Solves the Stein equation A X A^T - X + W = 0 through the Cayley
/// transform A_c = (A+I)^{-1}(A-I), W_c = 2 (A+I)^{-1} W (A+I)^{-T},
/// which maps it to a continuous Lyapunov equation with the same X.
/// @throws NumericalError when -1 is (numerically) an eigenvalue of A.
LyapunovSolution solve_discrete_lyapunov(const Matrix& a, const Matrix& w);

}  // namespace lpvred
