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

#include "lpvred/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lpvred/errors.hpp"

namespace lpvred {

namespace {

using cd = std::complex<double>;

double spectral_abscissa(const Matrix& a) {
  Eigen::EigenSolver<Matrix> eig(a, false);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigenvalue computation failed");
  }
  return eig.eigenvalues().real().maxCoeff();
}

double spectral_radius(const Matrix& a) {
  Eigen::EigenSolver<Matrix> eig(a, false);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigenvalue computation failed");
  }
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

std::string make_horizon_warning(Index k_max, double tau_samples) {
  std::ostringstream msg;
  msg << "time horizon k_max=" << k_max
      << " is shorter than the slowest time constant (" << tau_samples
      << " samples); slow dynamics are excluded from the ranking";
  return msg.str();
}

double sigma_max(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

/// sigma_max(mj^T mi) by power iteration on mi^T mj mj^T mi, without
/// forming the product. Deterministic all-positive start vector.
double product_sigma_max(const Matrix& mj, const Matrix& mi) {
  const Index cols = mi.cols();
  if (cols == 0 || mi.rows() == 0) return 0.0;
  Vector v = Vector::Ones(cols);
  if (cols > 1) v += 0.001 * Vector::LinSpaced(cols, 0.0, 1.0);
  v.normalize();
  double lambda = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    const Vector gv = mj.transpose() * (mi * v);
    const Vector w = mi.transpose() * (mj * gv);
    const double next = v.dot(w);
    const double nrm = w.norm();
    if (nrm <= 1e-300) return 0.0;
    v = w / nrm;
    if (iter > 2 && std::abs(next - lambda) <= 1e-13 * std::max(next, 1e-30)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

}  // namespace

ComplexMatrix transfer_function(const LtiRealization& sys, double omega) {
  if (sys.n() == 0) return sys.D.cast<cd>();
  cd lambda;
  if (sys.time == TimeKind::Continuous) {
    if (std::isinf(omega)) return sys.D.cast<cd>();
    lambda = cd(0.0, omega);
  } else {
    lambda = std::polar(1.0, omega * sys.step);
  }
  ComplexMatrix x = (-sys.A).cast<cd>();
  x.diagonal().array() += lambda;
  Eigen::FullPivLU<ComplexMatrix> lu(x);
  if (!lu.isInvertible()) {
    throw NumericalError("frequency coincides with a pole of the system");
  }
  return sys.D.cast<cd>() + sys.C.cast<cd>() * lu.solve(sys.B.cast<cd>());
}

ComplexMatrix transfer_function(const AffineLpvModel& model,
                                const Vector& theta, double omega) {
  return transfer_function(model.evaluate_at(theta), omega);
}

SensitivityRealization build_sensitivity_realization(
    const AffineLpvModel& model, Index param) {
  const Index l = model.l();
  if (param < 0 || param >= l) {
    throw DimensionError("parameter index out of range");
  }
  const Index n = model.n();
  const Index m = model.m();
  const Index q = model.q();
  const std::vector<Matrix>& ab = model.a_blocks();
  const std::vector<Matrix>& bb = model.b_blocks();
  const std::vector<Matrix>& cb = model.c_blocks();
  const std::vector<Matrix>& db = model.d_blocks();

  std::vector<Matrix> as, bs, cs, ds;
  as.reserve(l + 1);
  bs.reserve(l + 1);
  cs.reserve(l + 1);
  ds.reserve(l + 1);
  for (Index k = 0; k <= l; ++k) {
    Matrix a = Matrix::Zero(4 * n, 4 * n);
    for (Index r = 0; r < 4; ++r) a.block(r * n, r * n, n, n) = ab[k];
    Matrix b = Matrix::Zero(4 * n, m);
    b.topRows(n) = bb[k];
    b.middleRows(2 * n, n) = bb[k];
    Matrix c = Matrix::Zero(q, 4 * n);
    c.middleCols(n, n) = cb[k];
    c.rightCols(n) = cb[k];
    Matrix d = Matrix::Zero(q, m);
    if (k == 0) {
      a.block(n, 2 * n, n, n) = ab[param + 1];
      b.bottomRows(n) = bb[param + 1];
      c.leftCols(n) = cb[param + 1];
      d = db[param + 1];
    }
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
    cs.push_back(std::move(c));
    ds.push_back(std::move(d));
  }
  return SensitivityRealization{
      param, AffineLpvModel(std::move(as), std::move(bs), std::move(cs),
                            std::move(ds), model.box(), model.time(),
                            model.step())};
}

std::vector<ComplexMatrix> sensitivity_gains(const AffineLpvModel& model,
                                             const Vector& theta,
                                             double omega) {
  const Index l = model.l();
  const Index n = model.n();
  const std::vector<Matrix>& ab = model.a_blocks();
  const std::vector<Matrix>& bb = model.b_blocks();
  const std::vector<Matrix>& cb = model.c_blocks();
  const std::vector<Matrix>& db = model.d_blocks();

  std::vector<ComplexMatrix> out;
  out.reserve(l);

  const bool resolvent_vanishes =
      n == 0 ||
      (model.time() == TimeKind::Continuous && std::isinf(omega));
  if (resolvent_vanishes) {
    for (Index i = 0; i < l; ++i) out.push_back(db[i + 1].cast<cd>());
    return out;
  }

  const LtiRealization sys = model.evaluate_at(theta);
  cd lambda;
  if (sys.time == TimeKind::Continuous) {
    lambda = cd(0.0, omega);
  } else {
    lambda = std::polar(1.0, omega * sys.step);
  }
  ComplexMatrix x = (-sys.A).cast<cd>();
  x.diagonal().array() += lambda;
  Eigen::PartialPivLU<ComplexMatrix> lu(x);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.minCoeff() <= 1e-14 * pivots.maxCoeff()) {
    throw NumericalError("frequency coincides with a pole of the system");
  }

  const ComplexMatrix rb = lu.solve(sys.B.cast<cd>());
  const ComplexMatrix ct = sys.C.transpose().cast<cd>();
  const ComplexMatrix crt = lu.transpose().solve(ct);
  const ComplexMatrix cr = crt.transpose();

  for (Index i = 1; i <= l; ++i) {
    ComplexMatrix airb(n, rb.cols());
    airb.real() = ab[i] * rb.real();
    airb.imag() = ab[i] * rb.imag();
    ComplexMatrix h = db[i].cast<cd>();
    h.real() += cb[i] * rb.real();
    h.imag() += cb[i] * rb.imag();
    h += cr * airb;
    h.real() += cr.real() * bb[i];
    h.imag() += cr.imag() * bb[i];
    out.push_back(std::move(h));
  }
  return out;
}

std::string to_string(CovarianceMatrix::Kind kind) {
  return kind == CovarianceMatrix::Kind::Tscm ? "tscm" : "scm";
}

CovarianceMatrix tscm(const AffineLpvModel& model,
                      const TscmOptions& options) {
  model.require_stable();
  if (options.freq_points < 1) {
    throw ConfigError("frequency grid needs at least one point");
  }
  if (!(options.freq_min > 0.0) || options.freq_max < options.freq_min) {
    throw ConfigError("frequency range must satisfy 0 < min <= max");
  }

  const Index l = model.l();
  CovarianceMatrix cov;
  cov.kind = CovarianceMatrix::Kind::Tscm;
  cov.eval = options.eval;
  cov.entries = Matrix::Zero(l, l);

  double wmin = options.freq_min;
  double wmax = options.freq_max;
  if (model.time() == TimeKind::Discrete) {
    // frequencies past Nyquist alias; keep the grid below pi/step
    wmax = std::min(wmax, M_PI / model.step());
    wmin = std::min(wmin, wmax);
  }
  cov.freq_min = wmin;
  cov.freq_max = wmax;
  cov.freq_points = options.freq_points;
  if (l == 0) return cov;

  std::vector<double> grid;
  grid.reserve(options.freq_points);
  if (options.freq_points == 1 || wmax == wmin) {
    grid.push_back(std::sqrt(wmin * wmax));
  } else {
    const double ratio = wmax / wmin;
    for (int k = 0; k < options.freq_points; ++k) {
      grid.push_back(wmin *
                     std::pow(ratio, k / (options.freq_points - 1.0)));
    }
  }

  const std::vector<Vector> thetas = options.eval.points(model.box());
  for (const Vector& theta : thetas) {
    for (const double omega : grid) {
      const std::vector<ComplexMatrix> gains =
          sensitivity_gains(model, theta, omega);
      for (Index i = 0; i < l; ++i) {
        for (Index j = i; j < l; ++j) {
          const double val = sigma_max(gains[i].adjoint() * gains[j]);
          if (val > cov.entries(i, j)) {
            cov.entries(i, j) = val;
            cov.entries(j, i) = val;
          }
        }
      }
    }
  }
  return cov;
}

Matrix output_evolution(const AffineLpvModel& model, const Vector& theta,
                        const Vector& x0, const Matrix& inputs) {
  if (model.time() != TimeKind::Discrete) {
    throw ConfigError("output evolution requires a discrete-time model");
  }
  const LtiRealization sys = model.evaluate_at(theta);
  if (x0.size() != sys.n()) {
    throw DimensionError("initial state dimension mismatch");
  }
  if (inputs.rows() != sys.m()) {
    throw DimensionError("input row count must equal the input dimension");
  }
  Matrix y(sys.q(), inputs.cols());
  Vector x = x0;
  for (Index k = 0; k < inputs.cols(); ++k) {
    y.col(k) = sys.C * x + sys.D * inputs.col(k);
    x = sys.A * x + sys.B * inputs.col(k);
  }
  return y;
}

DiscreteDerivatives zoh_with_jacobian(const AffineLpvModel& model,
                                      const Vector& theta, double step) {
  if (model.time() != TimeKind::Continuous) {
    throw ConfigError("zero-order hold applies to continuous models");
  }
  if (!(step > 0.0)) throw ConfigError("step must be positive");

  const Index n = model.n();
  const Index m = model.m();
  const Index l = model.l();
  const LtiRealization sys = model.evaluate_at(theta);
  const std::vector<Matrix>& ab = model.a_blocks();
  const std::vector<Matrix>& bb = model.b_blocks();
  const std::vector<Matrix>& cb = model.c_blocks();
  const std::vector<Matrix>& db = model.d_blocks();

  DiscreteDerivatives out;
  out.step = step;
  out.c = sys.C;
  out.d = sys.D;
  out.da.reserve(l);
  out.db.reserve(l);
  out.dc.reserve(l);
  out.dd.reserve(l);

  const Index s = n + m;
  Matrix base = Matrix::Zero(s, s);
  base.topLeftCorner(n, n) = sys.A;
  base.topRightCorner(n, m) = sys.B;
  base *= step;

  if (l == 0) {
    const Matrix ex = base.exp();
    out.a = ex.topLeftCorner(n, n);
    out.b = ex.block(0, n, n, m);
    return out;
  }

  // exp([[M, Ei],[0, M]]) carries d(e^M) in direction Ei top right
  Matrix doubled = Matrix::Zero(2 * s, 2 * s);
  doubled.topLeftCorner(s, s) = base;
  doubled.bottomRightCorner(s, s) = base;
  for (Index i = 0; i < l; ++i) {
    Matrix dir = Matrix::Zero(s, s);
    dir.topLeftCorner(n, n) = ab[i + 1];
    dir.topRightCorner(n, m) = bb[i + 1];
    doubled.block(0, s, s, s) = dir * step;
    const Matrix ex = doubled.exp();
    if (i == 0) {
      out.a = ex.topLeftCorner(n, n);
      out.b = ex.block(0, n, n, m);
    }
    out.da.push_back(ex.block(0, s, n, n));
    out.db.push_back(ex.block(0, s + n, n, m));
    out.dc.push_back(cb[i + 1]);
    out.dd.push_back(db[i + 1]);
  }
  return out;
}

DiscreteDerivatives discrete_derivatives(const AffineLpvModel& model,
                                         const Vector& theta) {
  if (model.time() != TimeKind::Discrete) {
    throw ConfigError("model is not discrete-time");
  }
  const LtiRealization sys = model.evaluate_at(theta);
  DiscreteDerivatives out;
  out.a = sys.A;
  out.b = sys.B;
  out.c = sys.C;
  out.d = sys.D;
  out.step = model.step();
  const Index l = model.l();
  for (Index i = 1; i <= l; ++i) {
    out.da.push_back(model.a_blocks()[i]);
    out.db.push_back(model.b_blocks()[i]);
    out.dc.push_back(model.c_blocks()[i]);
    out.dd.push_back(model.d_blocks()[i]);
  }
  return out;
}

double slowest_time_constant(const AffineLpvModel& model,
                             const Vector& theta) {
  const LtiRealization sys = model.evaluate_at(theta);
  if (sys.n() == 0) return 0.0;
  if (model.time() == TimeKind::Continuous) {
    const double alpha = spectral_abscissa(sys.A);
    if (alpha >= 0.0) {
      throw StabilityError("A(theta) is not Hurwitz");
    }
    return -1.0 / alpha;
  }
  const double rho = spectral_radius(sys.A);
  if (rho >= 1.0) {
    throw StabilityError("A(theta) is not Schur stable");
  }
  if (rho <= 0.0) return 0.0;
  return -1.0 / std::log(rho);
}

std::string horizon_warning(const Matrix& a, Index k_max) {
  if (a.rows() == 0) return {};
  const double rho = spectral_radius(a);
  if (rho >= 1.0) return "discrete-time dynamics are not asymptotically stable";
  if (rho <= 0.0) return {};
  const double tau = -1.0 / std::log(rho);
  if (static_cast<double>(k_max) < tau) return make_horizon_warning(k_max, tau);
  return {};
}

std::vector<Matrix> time_sensitivity_matrices(
    const DiscreteDerivatives& data, Index k_max,
    const TimeSensitivityOptions& options) {
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
  const Index n = data.n();
  const Index m = data.m();
  const Index q = data.q();
  const Index l = data.l();
  if (options.include_initial_state && options.x0.size() != n) {
    throw DimensionError("initial state dimension mismatch");
  }

  // Derivative Markov parameters t[i][kappa] = d(C A^{kappa-1} B) and
  // initial-state terms g[i][k] = d(C A^k) x0, by the product rule
  // through the running pair p = A^{k-1}, s[i] = d(A^{k-1}).
  std::vector<std::vector<Matrix>> t(l), g(l);
  Matrix p = Matrix::Identity(n, n);
  std::vector<Matrix> s(l, Matrix::Zero(n, n));
  for (Index i = 0; i < l; ++i) {
    t[i].reserve(k_max + 1);
    t[i].push_back(data.dd[i]);
    if (options.include_initial_state) {
      g[i].reserve(k_max + 1);
      g[i].push_back(data.dc[i] * options.x0);
    }
  }
  for (Index k = 1; k <= k_max; ++k) {
    for (Index i = 0; i < l; ++i) {
      t[i].push_back(data.dc[i] * (p * data.b) + data.c * (s[i] * data.b) +
                     (data.c * p) * data.db[i]);
    }
    for (Index i = 0; i < l; ++i) s[i] = data.a * s[i] + data.da[i] * p;
    p = data.a * p;
    if (options.include_initial_state) {
      for (Index i = 0; i < l; ++i) {
        g[i].push_back(data.dc[i] * (p * options.x0) +
                       data.c * (s[i] * options.x0));
      }
    }
  }

  const Index rows = q * (k_max + 1);
  const Index cols =
      m * (k_max + 1) + (options.include_initial_state ? 1 : 0);
  std::vector<Matrix> out;
  out.reserve(l);
  for (Index i = 0; i < l; ++i) {
    Matrix mi = Matrix::Zero(rows, cols);
    for (Index kappa = 0; kappa <= k_max; ++kappa) {
      for (Index r = kappa; r <= k_max; ++r) {
        mi.block(r * q, (r - kappa) * m, q, m) = t[i][kappa];
      }
    }
    if (options.include_initial_state) {
      for (Index k = 0; k <= k_max; ++k) {
        mi.block(k * q, m * (k_max + 1), q, 1) = g[i][k];
      }
    }
    out.push_back(std::move(mi));
  }
  return out;
}

std::vector<Matrix> time_sensitivity_matrices(
    const AffineLpvModel& model, const Vector& theta, Index k_max,
    const TimeSensitivityOptions& options) {
  return time_sensitivity_matrices(discrete_derivatives(model, theta), k_max,
                                   options);
}

CovarianceMatrix scm(const AffineLpvModel& model, const ScmOptions& options) {
  model.require_stable();
  const Index l = model.l();
  const Vector center = Vector::Constant(l, 0.5);

  CovarianceMatrix cov;
  cov.kind = CovarianceMatrix::Kind::Scm;
  cov.eval = options.eval;
  cov.entries = Matrix::Zero(l, l);

  double tau_samples = 0.0;
  if (model.time() == TimeKind::Continuous) {
    const double tau =
        model.n() > 0 ? slowest_time_constant(model, center) : 1.0;
    cov.step = options.step > 0.0 ? options.step : tau / 50.0;
    tau_samples = tau / cov.step;
  } else {
    cov.step = model.step();
    tau_samples = model.n() > 0 ? slowest_time_constant(model, center) : 0.0;
  }
  cov.k_max = options.k_max >= 1
                  ? options.k_max
                  : std::max<Index>(
                        1, static_cast<Index>(std::ceil(5.0 * tau_samples)));
  if (static_cast<double>(cov.k_max) < tau_samples) {
    cov.warning = make_horizon_warning(cov.k_max, tau_samples);
  }
  if (l == 0) return cov;

  const std::vector<Vector> thetas = options.eval.points(model.box());
  for (const Vector& theta : thetas) {
    const DiscreteDerivatives data =
        model.time() == TimeKind::Continuous
            ? zoh_with_jacobian(model, theta, cov.step)
            : discrete_derivatives(model, theta);
    const std::vector<Matrix> ms =
        time_sensitivity_matrices(data, cov.k_max, options.time);
    for (Index i = 0; i < l; ++i) {
      for (Index j = i; j < l; ++j) {
        const double val = product_sigma_max(ms[j], ms[i]);
        if (val > cov.entries(i, j)) {
          cov.entries(i, j) = val;
          cov.entries(j, i) = val;
        }
      }
    }
  }
  return cov;
}

ParameterProjection covariance_to_projection(const CovarianceMatrix& cov,
                                             Index n_r,
                                             bool include_constant) {
  const Index l = cov.entries.rows();
  if (cov.entries.cols() != l) {
    throw DimensionError("covariance matrix must be square");
  }
  const Index directions = n_r - (include_constant ? 1 : 0);
  if (n_r < 1 || directions < 0 || directions > l) {
    throw ConfigError("n_r out of range for this covariance matrix");
  }

  Matrix t = Matrix::Zero(l + 1, n_r);
  Index col = 0;
  if (include_constant) {
    t(0, 0) = 1.0;
    col = 1;
  }
  if (directions > 0) {
    const Matrix sym = 0.5 * (cov.entries + cov.entries.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) {
      throw NumericalError("covariance eigendecomposition failed");
    }
    const Vector vals = eig.eigenvalues();
    const Matrix vecs = eig.eigenvectors();

    // dominant axis of each eigenvector, for tie-breaking and signs
    std::vector<Index> axis(l);
    for (Index k = 0; k < l; ++k) {
      Index best = 0;
      for (Index r = 1; r < l; ++r) {
        if (std::abs(vecs(r, k)) > std::abs(vecs(best, k))) best = r;
      }
      axis[k] = best;
    }

    std::vector<Index> ranked(l);
    std::iota(ranked.begin(), ranked.end(), Index{0});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](Index a, Index b) {
                       return std::abs(vals(a)) > std::abs(vals(b));
                     });
    // near-ties rank by dominant axis so diagonal input keeps
    // coordinate order
    const double tie = 1e-12 * (1.0 + std::abs(vals(ranked[0])));
    for (Index start = 0; start < l;) {
      Index stop = start + 1;
      while (stop < l && std::abs(std::abs(vals(ranked[start])) -
                                  std::abs(vals(ranked[stop]))) <= tie) {
        ++stop;
      }
      std::stable_sort(ranked.begin() + start, ranked.begin() + stop,
                       [&](Index a, Index b) { return axis[a] < axis[b]; });
      start = stop;
    }

    for (Index k = 0; k < directions; ++k, ++col) {
      Vector v = vecs.col(ranked[k]);
      if (v(axis[ranked[k]]) < 0.0) v = -v;
      t.block(1, col, l, 1) = v;
    }
  }
  return ParameterProjection(std::move(t));
}

}  // namespace lpvred
