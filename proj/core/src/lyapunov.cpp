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

#include "lpvred/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"

namespace lpvred {

namespace {

/// Start indices of the 1x1 / 2x2 diagonal blocks of a real Schur form.
std::vector<Index> schur_block_starts(const Matrix& t) {
  std::vector<Index> starts;
  Index i = 0;
  while (i < t.rows()) {
    starts.push_back(i);
    const bool two = (i + 1 < t.rows()) && (std::abs(t(i + 1, i)) > 0.0);
    i += two ? 2 : 1;
  }
  return starts;
}

/// Solves the small Sylvester system T11 Y + Y T22^T = R (sizes <= 2).
Matrix solve_small_sylvester(const Matrix& t11, const Matrix& t22,
                             const Matrix& r) {
  const Index p = t11.rows();
  const Index s = t22.rows();
  Matrix k = Matrix::Zero(p * s, p * s);
  // vec(T11 Y) = (I kron T11) vec(Y); vec(Y T22^T) = (T22 kron I) vec(Y).
  for (Index j = 0; j < s; ++j)
    k.block(j * p, j * p, p, p) = t11;
  for (Index j = 0; j < s; ++j)
    for (Index i = 0; i < s; ++i)
      k.block(i * p, j * p, p, p) += t22(i, j) * Matrix::Identity(p, p);
  Eigen::FullPivLU<Matrix> lu(k);
  if (!lu.isInvertible())
    throw NumericalError(
        "Lyapunov operator singular: eigenvalue pair lambda_i + lambda_j "
        "vanishes");
  Vector rhs(p * s);
  for (Index j = 0; j < s; ++j) rhs.segment(j * p, p) = r.col(j);
  const Vector y = lu.solve(rhs);
  Matrix out(p, s);
  for (Index j = 0; j < s; ++j) out.col(j) = y.segment(j * p, p);
  return out;
}

double pair_separation(const Matrix& a) {
  if (a.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  const ComplexVector lam = es.eigenvalues();
  double sep = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lam.size(); ++i)
    for (Index j = 0; j < lam.size(); ++j)
      sep = std::min(sep, std::abs(lam(i) + std::conj(lam(j))));
  return sep;
}

}  // namespace

LyapunovSolution solve_continuous_lyapunov(const Matrix& a, const Matrix& w) {
  if (a.rows() != a.cols()) throw DimensionError("lyapunov: A not square");
  if (w.rows() != a.rows() || w.cols() != a.rows())
    throw DimensionError("lyapunov: W shape mismatch");
  const Index n = a.rows();
  LyapunovSolution sol;
  if (n == 0) {
    sol.X = Matrix(0, 0);
    sol.separation = std::numeric_limits<double>::infinity();
    return sol;
  }

  Eigen::RealSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success)
    throw NumericalError("lyapunov: Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  const Matrix wt = u.transpose() * w * u;

  const std::vector<Index> starts = schur_block_starts(t);
  const Index nb = static_cast<Index>(starts.size());
  auto block_size = [&](Index k) {
    return (k + 1 < nb ? starts[k + 1] : n) - starts[k];
  };

  // T Y + Y T^T + W~ = 0, solved blockwise from the bottom-right corner.
  Matrix y = Matrix::Zero(n, n);
  for (Index bi = nb - 1; bi >= 0; --bi) {
    const Index i0 = starts[bi];
    const Index pi = block_size(bi);
    for (Index bj = nb - 1; bj >= 0; --bj) {
      const Index j0 = starts[bj];
      const Index pj = block_size(bj);
      Matrix rhs = -wt.block(i0, j0, pi, pj);
      // Contributions of already-solved blocks below row bi / right of
      // column bj.
      const Index below = i0 + pi;
      if (below < n)
        rhs.noalias() -=
            t.block(i0, below, pi, n - below) * y.block(below, j0, n - below, pj);
      const Index right = j0 + pj;
      if (right < n)
        rhs.noalias() -= y.block(i0, right, pi, n - right) *
                         t.block(j0, right, pj, n - right).transpose();
      y.block(i0, j0, pi, pj) =
          solve_small_sylvester(t.block(i0, i0, pi, pi),
                                t.block(j0, j0, pj, pj), rhs);
    }
  }

  sol.X = u * y * u.transpose();
  if ((w - w.transpose()).norm() <= 1e-12 * (1.0 + w.norm()))
    sol.X = symmetrize(sol.X);
  sol.residual =
      (a * sol.X + sol.X * a.transpose() + w).norm() / std::max(1.0, w.norm());
  sol.separation = pair_separation(a);
  sol.ill_conditioned =
      sol.separation < 1e-8 * std::max(1.0, a.norm()) || sol.residual > 1e-6;
  return sol;
}

LyapunovSolution solve_discrete_lyapunov(const Matrix& a, const Matrix& w) {
  if (a.rows() != a.cols()) throw DimensionError("stein: A not square");
  if (w.rows() != a.rows() || w.cols() != a.rows())
    throw DimensionError("stein: W shape mismatch");
  const Index n = a.rows();
  LyapunovSolution sol;
  if (n == 0) {
    sol.X = Matrix(0, 0);
    sol.separation = std::numeric_limits<double>::infinity();
    return sol;
  }

  const Matrix ap = a + Matrix::Identity(n, n);
  Eigen::PartialPivLU<Matrix> lu(ap);
  const Matrix am = a - Matrix::Identity(n, n);
  const Matrix ac = lu.solve(am);
  // Reject a numerically singular A + I via the transformed residual.
  if ((ap * ac - am).norm() > 1e-8 * std::max(1.0, am.norm()))
    throw NumericalError("stein: -1 is numerically an eigenvalue of A");
  const Matrix wc_half = lu.solve(w);
  Matrix wc = 2.0 * lu.solve(wc_half.transpose()).transpose();
  if ((w - w.transpose()).norm() <= 1e-12 * (1.0 + w.norm()))
    wc = symmetrize(wc);

  sol = solve_continuous_lyapunov(ac, wc);
  sol.residual = (a * sol.X * a.transpose() - sol.X + w).norm() /
                 std::max(1.0, w.norm());
  sol.ill_conditioned = sol.ill_conditioned || sol.residual > 1e-6;
  return sol;
}

}  // namespace lpvred
