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

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Largest real part over the spectrum of a (square, real) matrix.
double max_real_eigenvalue(const Matrix& a);

/// Largest eigenvalue modulus.
double spectral_radius(const Matrix& a);

bool is_hurwitz(const Matrix& a, double margin = 0.0);
bool is_schur(const Matrix& a, double margin = 0.0);

/// Smallest / largest eigenvalue of a symmetric matrix.
double min_eigenvalue_sym(const Matrix& s);
double max_eigenvalue_sym(const Matrix& s);

/// Dimension of the symmetric vectorization of an n x n matrix.
inline Index svec_dim(Index n) { return n * (n + 1) / 2; }

/// Orthonormal symmetric vectorization: packs the lower triangle
/// column by column, scaling off-diagonal entries by sqrt(2) so that
/// svec(S).dot(svec(T)) equals the Frobenius inner product of S and T.
Vector svec(const Matrix& s);

/// Inverse of svec.
Matrix smat(const Vector& v);

/// Largest principal angle (radians) between the column spans of two
/// matrices with orthonormal columns and equal column counts.
double max_principal_angle(const Matrix& u, const Matrix& v);

/// Largest eigenvalue of P Q^T for symmetric positive semidefinite P
/// and Q, evaluated in the symmetric form lambda_max(S Q S) with
/// S = P^(1/2). All eigenvalues of such a product are real and
/// nonnegative; this avoids the nonsymmetric eigenproblem.
double coupled_max_eigenvalue(const Matrix& p, const Matrix& q);

/// Thin QR orthonormalization, sign-fixed so the factor is unique
/// (positive R diagonal). Columns already orthonormal pass through
/// unchanged.
/// @throws NumericalError when the input is column rank deficient.
Matrix orthonormalize(const Matrix& m);

}  // namespace lpvred
