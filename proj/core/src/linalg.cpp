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

#include "lpvred/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "lpvred/errors.hpp"

namespace lpvred {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double max_real_eigenvalue(const Matrix& a) {
  if (a.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

double spectral_radius(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_hurwitz(const Matrix& a, double margin) {
  return max_real_eigenvalue(a) < -margin;
}

bool is_schur(const Matrix& a, double margin) {
  return spectral_radius(a) < 1.0 - margin;
}

double min_eigenvalue_sym(const Matrix& s) {
  if (s.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue_sym(const Matrix& s) {
  if (s.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(s.rows() - 1);
}

Vector svec(const Matrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("svec: matrix not square");
  const Index n = s.rows();
  const double rt2 = std::sqrt(2.0);
  Vector v(svec_dim(n));
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    v(k++) = s(j, j);
    for (Index i = j + 1; i < n; ++i) v(k++) = rt2 * s(i, j);
  }
  return v;
}

Matrix smat(const Vector& v) {
  // Invert k = n(n+1)/2 for the packed length.
  const Index len = v.size();
  const Index n =
      static_cast<Index>(std::llround((std::sqrt(8.0 * len + 1.0) - 1.0) / 2.0));
  if (svec_dim(n) != len) throw DimensionError("smat: not a packed length");
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  Matrix s(n, n);
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    s(j, j) = v(k++);
    for (Index i = j + 1; i < n; ++i) {
      s(i, j) = inv_rt2 * v(k);
      s(j, i) = s(i, j);
      ++k;
    }
  }
  return s;
}

double max_principal_angle(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionError("max_principal_angle: shape mismatch");
  if (u.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(u.transpose() * v);
  double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

Matrix orthonormalize(const Matrix& m) {
  if (m.rows() < m.cols())
    throw DimensionError("orthonormalize: more columns than rows");
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r =
      qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  for (Index j = 0; j < m.cols(); ++j) {
    const double d = r(j, j);
    if (std::abs(d) < 1e-12 * std::max(1.0, m.col(j).norm()))
      throw NumericalError("orthonormalize: rank deficient input");
    if (d < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

double coupled_max_eigenvalue(const Matrix& p, const Matrix& q) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
    throw DimensionError("coupled_max_eigenvalue: shape mismatch");
  if (p.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(p));
  if (es.info() != Eigen::Success)
    throw NumericalError("coupled_max_eigenvalue: eigensolver failed");
  // Clamp tiny negative eigenvalues so the square root stays real.
  const Vector lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix s =
      es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  return max_eigenvalue_sym(symmetrize(s * symmetrize(q) * s));
}

}  // namespace lpvred
