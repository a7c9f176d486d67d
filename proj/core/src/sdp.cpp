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

#include "lpvred/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"

namespace lpvred {

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal:
      return "optimal";
    case SdpStatus::Feasible:
      return "feasible";
    case SdpStatus::Infeasible:
      return "infeasible";
    case SdpStatus::IterationLimit:
      return "iteration-limit";
    case SdpStatus::NumericalTrouble:
      return "numerical-trouble";
  }
  return "unknown";
}

namespace {

constexpr double kStepFraction = 0.95;
constexpr double kConvergedGap = 1e-9;
constexpr double kInfeasibleMargin = 1e-10;

/// Index tables of the orthonormal svec basis of s x s symmetric
/// matrices: entry alpha lives at (row, col) with row >= col; diagonal
/// entries have scale 1, off-diagonal pairs scale 1/sqrt(2).
struct SvecTable {
  std::vector<Index> row, col;
  std::vector<double> scale;

  explicit SvecTable(Index s) {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < s; ++j) {
      row.push_back(j);
      col.push_back(j);
      scale.push_back(1.0);
      for (Index i = j + 1; i < s; ++i) {
        row.push_back(i);
        col.push_back(j);
        scale.push_back(inv_rt2);
      }
    }
  }

  Index dim() const { return static_cast<Index>(row.size()); }
};

/// svec(sym(T)) of a possibly nonsymmetric square T.
void pack_sym(const SvecTable& tab, const Matrix& t, Vector& out) {
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  for (Index a = 0; a < tab.dim(); ++a) {
    const Index i = tab.row[a];
    const Index j = tab.col[a];
    out(a) = (i == j) ? t(i, i) : (t(i, j) + t(j, i)) * inv_rt2;
  }
}

double max_negative_step(const Eigen::LLT<Matrix>& llt, const Matrix& d) {
  // Largest alpha with Z + alpha D > 0, via lambda_min of L^-1 D L^-T.
  Matrix m = llt.matrixL().solve(d);
  m = llt.matrixL().solve(m.transpose()).transpose();
  const double lam = min_eigenvalue_sym(symmetrize(m));
  if (lam >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lam;
}

struct Ipm {
  const SdpProblem& prob;
  const SdpOptions& opts;
  Index s;        // unknown side length
  Index ns;       // svec dimension
  Index nb;       // unknown block count
  Index ny;       // nb * ns
  SvecTable tab;

  std::vector<double> block_scale;
  std::vector<Matrix> k_scaled;
  std::vector<Vector> lyap_scaled, diag_scaled;
  std::vector<std::vector<Index>> active;
  std::vector<bool> need_lyap, need_diag;

  // Iterate state.
  Vector y;            // ny (+1 in phase 1 for the margin variable)
  bool phase1 = false;
  double t_cap = 0.0;
  std::vector<Matrix> z, x, zinv;
  std::vector<Eigen::LLT<Matrix>> z_llt, x_llt;
  double z_cap = 1.0, x_cap = 1.0;
  int total_iterations = 0;

  // Workspaces.
  Matrix h;
  Matrix g_ll, g_li, g_ii;
  Matrix tbuf;
  Vector col_buf;

  Ipm(const SdpProblem& p, const SdpOptions& o)
      : prob(p), opts(o), s(p.unknown_dim), ns(svec_dim(p.unknown_dim)),
        nb(p.unknown_count), ny(nb * ns), tab(p.unknown_dim) {
    const std::size_t m = prob.blocks.size();
    block_scale.resize(m);
    k_scaled.resize(m);
    lyap_scaled.resize(m);
    diag_scaled.resize(m);
    active.resize(m);
    need_lyap.assign(m, false);
    need_diag.assign(m, false);
    for (std::size_t b = 0; b < m; ++b) {
      const SdpBlock& blk = prob.blocks[b];
      if (blk.K.rows() != s || blk.K.cols() != s)
        throw DimensionError("sdp: constraint block size mismatch");
      if (blk.lyap_coeff.size() != nb || blk.diag_coeff.size() != nb)
        throw DimensionError("sdp: coefficient vector length mismatch");
      const double mag = spectral_norm(symmetrize(blk.K));
      block_scale[b] = 1.0 / std::max(1.0, mag);
      k_scaled[b] = symmetrize(blk.K) * block_scale[b];
      lyap_scaled[b] = blk.lyap_coeff * block_scale[b];
      diag_scaled[b] = blk.diag_coeff * block_scale[b];
      for (Index k = 0; k < nb; ++k) {
        const bool al = std::abs(lyap_scaled[b](k)) > 0.0;
        const bool ad = std::abs(diag_scaled[b](k)) > 0.0;
        if (al) need_lyap[b] = true;
        if (ad) need_diag[b] = true;
        if (al || ad) active[b].push_back(k);
      }
      if (need_lyap[b] && (blk.A.rows() != s || blk.A.cols() != s))
        throw DimensionError("sdp: Lyapunov block without square A");
    }
    z.resize(m);
    x.resize(m);
    zinv.resize(m);
    z_llt.resize(m);
    x_llt.resize(m);
    g_ll.resize(ns, ns);
    g_li.resize(ns, ns);
    g_ii.resize(ns, ns);
    tbuf.resize(s, s);
    col_buf.resize(ns);
  }

  Index dim_y() const { return ny + (phase1 ? 1 : 0); }
  double margin_t() const { return phase1 ? y(ny) : 0.0; }

  Matrix unknown(Index k) const { return smat(y.segment(k * ns, ns)); }

  /// Z_b = K + sum_k [a_k (A P_k + P_k A^T) + e_k P_k] - t I, exactly
  /// from the current y.
  void refresh_z() {
    const double t = margin_t();
    std::vector<Matrix> p(nb);
    for (Index k = 0; k < nb; ++k) p[k] = unknown(k);
    for (std::size_t b = 0; b < prob.blocks.size(); ++b) {
      Matrix acc = k_scaled[b];
      if (phase1) acc.diagonal().array() -= t;
      if (need_lyap[b]) {
        Matrix slyap = Matrix::Zero(s, s);
        for (Index k : active[b])
          if (lyap_scaled[b](k) != 0.0) slyap += lyap_scaled[b](k) * p[k];
        const Matrix& a = prob.blocks[b].A;
        acc.noalias() += a * slyap;
        acc.noalias() += slyap * a.transpose();
      }
      if (need_diag[b])
        for (Index k : active[b])
          if (diag_scaled[b](k) != 0.0) acc += diag_scaled[b](k) * p[k];
      z[b] = symmetrize(acc);
    }
    if (phase1) z_cap = t_cap - t;
  }

  bool factor_state() {
    for (std::size_t b = 0; b < z.size(); ++b) {
      z_llt[b].compute(z[b]);
      if (z_llt[b].info() != Eigen::Success) return false;
      zinv[b] = z_llt[b].solve(Matrix::Identity(s, s));
      zinv[b] = symmetrize(zinv[b]);
      x_llt[b].compute(x[b]);
      if (x_llt[b].info() != Eigen::Success) return false;
    }
    return phase1 ? z_cap > 0.0 && x_cap > 0.0 : true;
  }

  double mu() const {
    double acc = 0.0;
    for (std::size_t b = 0; b < z.size(); ++b)
      acc += (x[b].array() * z[b].array()).sum();
    if (phase1) acc += x_cap * z_cap;
    const double dims =
        static_cast<double>(z.size()) * s + (phase1 ? 1.0 : 0.0);
    return acc / dims;
  }

  /// Fills the lower triangle of H = [tr(F_i X F_j Z^-1)] and the
  /// vectors hz_i = tr(F_i Z^-1), hx_i = tr(F_i X).
  void assemble(Matrix& hh, Vector& hz, Vector& hx) {
    hh.setZero();
    hz.setZero();
    hx.setZero();
    const Index ti = ny;  // margin row, phase 1 only
    for (std::size_t b = 0; b < prob.blocks.size(); ++b) {
      const Vector& a_cf = lyap_scaled[b];
      const Vector& e_cf = diag_scaled[b];
      const bool nl = need_lyap[b];
      const bool ni = need_diag[b];
      const Matrix& xx = x[b];
      const Matrix& zi = zinv[b];

      Matrix xa, za, at_za, at_xa;
      if (nl) {
        const Matrix& a = prob.blocks[b].A;
        xa.noalias() = xx * a;
        za.noalias() = zi * a;
        at_za.noalias() = a.transpose() * za;
        at_xa.noalias() = a.transpose() * xa;
      }

      // Columns of the per-block Gram matrices.
      for (Index beta = 0; beta < ns; ++beta) {
        const Index i = tab.row[beta];
        const Index j = tab.col[beta];
        const double sc = tab.scale[beta];
        if (ni) {
          tbuf.noalias() = xx.col(i) * zi.col(j).transpose();
          if (i != j) tbuf.noalias() += xx.col(j) * zi.col(i).transpose();
          pack_sym(tab, tbuf, col_buf);
          g_ii.col(beta) = sc * col_buf;
        }
        if (nl) {
          // svec(sym(M A + A^T M)) with M = X L(E_beta) Z^-1, using the
          // rank-4 outer-product form of M.
          tbuf.noalias() = xa.col(i) * za.row(j);
          tbuf.noalias() += at_xa.col(i) * zi.col(j).transpose();
          tbuf.noalias() += xx.col(i) * at_za.col(j).transpose();
          tbuf.noalias() += xa.row(i).transpose() * za.col(j).transpose();
          if (i != j) {
            tbuf.noalias() += xa.col(j) * za.row(i);
            tbuf.noalias() += at_xa.col(j) * zi.col(i).transpose();
            tbuf.noalias() += xx.col(j) * at_za.col(i).transpose();
            tbuf.noalias() += xa.row(j).transpose() * za.col(i).transpose();
          }
          pack_sym(tab, tbuf, col_buf);
          g_ll.col(beta) = sc * col_buf;
          if (ni) {
            tbuf.noalias() = xx.col(i) * za.row(j);
            tbuf.noalias() += xa.row(i).transpose() * zi.col(j).transpose();
            if (i != j) {
              tbuf.noalias() += xx.col(j) * za.row(i);
              tbuf.noalias() += xa.row(j).transpose() * zi.col(i).transpose();
            }
            pack_sym(tab, tbuf, col_buf);
            g_li.col(beta) = sc * col_buf;
          }
        }
      }

      // Accumulate the block-lower triangle of H.
      for (Index k : active[b]) {
        for (Index j2 : active[b]) {
          if (k < j2) continue;
          auto blk = hh.block(k * ns, j2 * ns, ns, ns);
          const double wll = a_cf(k) * a_cf(j2);
          const double wli = a_cf(k) * e_cf(j2);
          const double wil = e_cf(k) * a_cf(j2);
          const double wii = e_cf(k) * e_cf(j2);
          if (wll != 0.0) blk.noalias() += wll * g_ll;
          if (wli != 0.0) blk.noalias() += wli * g_li;
          if (wil != 0.0) blk.noalias() += wil * g_li.transpose();
          if (wii != 0.0) blk.noalias() += wii * g_ii;
        }
      }

      // hz, hx and, in phase 1, the margin row/diagonal.
      Vector u_l, u_i, w_l, w_i;
      if (nl) {
        const Matrix& a = prob.blocks[b].A;
        tbuf.noalias() = zi * a;
        pack_sym(tab, Matrix(tbuf + tbuf.transpose()), col_buf);
        u_l = col_buf;
        tbuf.noalias() = xx * a;
        pack_sym(tab, Matrix(tbuf + tbuf.transpose()), col_buf);
        w_l = col_buf;
      }
      pack_sym(tab, zi, col_buf);
      u_i = col_buf;
      pack_sym(tab, xx, col_buf);
      w_i = col_buf;
      for (Index k : active[b]) {
        auto zseg = hz.segment(k * ns, ns);
        auto xseg = hx.segment(k * ns, ns);
        if (nl && a_cf(k) != 0.0) {
          zseg += a_cf(k) * u_l;
          xseg += a_cf(k) * w_l;
        }
        if (ni && e_cf(k) != 0.0) {
          zseg += e_cf(k) * u_i;
          xseg += e_cf(k) * w_i;
        }
      }
      if (phase1) hx(ti) -= xx.trace();

      if (phase1) {
        // Row of the margin variable: F_t = -I in every block.
        Matrix r = zi * xx;
        Vector v_i(ns), v_l(ns);
        pack_sym(tab, r, v_i);
        if (nl) {
          const Matrix& a = prob.blocks[b].A;
          tbuf.noalias() = r * a;
          tbuf.noalias() += a.transpose() * r;
          pack_sym(tab, tbuf, v_l);
        }
        for (Index k : active[b]) {
          auto seg = hh.row(ti).segment(k * ns, ns);
          if (nl && a_cf(k) != 0.0)
            seg.transpose() -= a_cf(k) * v_l;
          if (ni && e_cf(k) != 0.0)
            seg.transpose() -= e_cf(k) * v_i;
        }
        hh(ti, ti) += r.trace();
        hz(ti) -= zi.trace();
      }
    }
    if (phase1) {
      hh(ti, ti) += x_cap / z_cap;
      hz(ti) -= 1.0 / z_cap;
      hx(ti) -= x_cap;
    }
  }

  /// dZ_b for a given dy (and dt in phase 1).
  Matrix dz_block(std::size_t b, const Vector& dy) const {
    Matrix acc = Matrix::Zero(s, s);
    Matrix slyap = Matrix::Zero(s, s);
    bool any_l = false;
    for (Index k : active[b]) {
      const Matrix dp = smat(dy.segment(k * ns, ns));
      if (lyap_scaled[b](k) != 0.0) {
        slyap += lyap_scaled[b](k) * dp;
        any_l = true;
      }
      if (diag_scaled[b](k) != 0.0) acc += diag_scaled[b](k) * dp;
    }
    if (any_l) {
      const Matrix& a = prob.blocks[b].A;
      acc.noalias() += a * slyap;
      acc.noalias() += slyap * a.transpose();
    }
    if (phase1) acc.diagonal().array() -= dy(ny);
    return symmetrize(acc);
  }

  /// Inner predictor-corrector loop for the current phase.
  /// Returns status and leaves the iterate in (y, x).
  SdpStatus iterate(const Vector& c, double stop_gap,
                    const std::function<bool()>& early_exit,
                    int budget) {
    const Index m = dim_y();
    h.resize(m, m);
    Vector hz(m);
    Vector hx(m);
    Vector corr(m);

    refresh_z();
    for (int it = 0; it < budget; ++it, ++total_iterations) {
      if (!factor_state()) return SdpStatus::NumericalTrouble;
      const double mu_now = mu();
      const double pobj = c.dot(y);
      if (early_exit && early_exit()) return SdpStatus::Feasible;

      assemble(h, hz, hx);
      const double dims =
          static_cast<double>(z.size()) * s + (phase1 ? 1.0 : 0.0);
      const double gap_rel = mu_now * dims / (1.0 + std::abs(pobj));
      const double rp_rel = (c - hx).norm() / (1.0 + c.norm());
      if (gap_rel < stop_gap && rp_rel < 1e-7) return SdpStatus::Optimal;

      Eigen::LLT<Matrix> hllt;
      double ridge = 0.0;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 0) {
          ridge = (ridge == 0.0)
                      ? 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff())
                      : ridge * 100.0;
          h.diagonal().array() += ridge;
        }
        hllt.compute(h);
        if (hllt.info() == Eigen::Success) break;
        if (attempt >= 4) return SdpStatus::NumericalTrouble;
      }

      // Predictor: sigma = 0.
      const Vector dy_a = hllt.solve(-c);
      std::vector<Matrix> dz_a(z.size()), dx_a(z.size());
      double dz_cap_a = 0.0, dx_cap_a = 0.0;
      double alpha_za = 1.0, alpha_xa = 1.0;
      for (std::size_t b = 0; b < z.size(); ++b) {
        dz_a[b] = dz_block(b, dy_a);
        Matrix xdz = x[b] * dz_a[b] * zinv[b];
        dx_a[b] = symmetrize(-x[b] - 0.5 * (xdz + xdz.transpose()));
        alpha_za = std::min(alpha_za,
                            kStepFraction * max_negative_step(z_llt[b], dz_a[b]));
        alpha_xa = std::min(alpha_xa,
                            kStepFraction * max_negative_step(x_llt[b], dx_a[b]));
      }
      if (phase1) {
        dz_cap_a = -dy_a(ny);
        dx_cap_a = -x_cap - x_cap * dz_cap_a / z_cap;
        if (dz_cap_a < 0.0)
          alpha_za = std::min(alpha_za, -kStepFraction * z_cap / dz_cap_a);
        if (dx_cap_a < 0.0)
          alpha_xa = std::min(alpha_xa, -kStepFraction * x_cap / dx_cap_a);
      }

      double gap_aff = 0.0;
      for (std::size_t b = 0; b < z.size(); ++b)
        gap_aff += ((x[b] + alpha_xa * dx_a[b]).array() *
                    (z[b] + alpha_za * dz_a[b]).array())
                       .sum();
      if (phase1)
        gap_aff += (x_cap + alpha_xa * dx_cap_a) * (z_cap + alpha_za * dz_cap_a);
      const double dims_total =
          static_cast<double>(z.size()) * s + (phase1 ? 1.0 : 0.0);
      const double mu_aff = std::max(gap_aff / dims_total, 0.0);
      double sigma = std::pow(mu_aff / mu_now, 3.0);
      sigma = std::clamp(sigma, 1e-6, 1.0);
      const double mu_target = sigma * mu_now;

      // Corrector right-hand side.
      corr.setZero();
      for (std::size_t b = 0; b < z.size(); ++b) {
        const Matrix xi = dx_a[b] * dz_a[b] * zinv[b];
        Vector v(ns);
        if (need_lyap[b]) {
          const Matrix& a = prob.blocks[b].A;
          tbuf.noalias() = xi * a;
          tbuf.noalias() += a.transpose() * xi;
          pack_sym(tab, tbuf, v);
          for (Index k : active[b])
            if (lyap_scaled[b](k) != 0.0)
              corr.segment(k * ns, ns) += lyap_scaled[b](k) * v;
        }
        if (need_diag[b] || phase1) pack_sym(tab, xi, v);
        if (need_diag[b])
          for (Index k : active[b])
            if (diag_scaled[b](k) != 0.0)
              corr.segment(k * ns, ns) += diag_scaled[b](k) * v;
        if (phase1) corr(ny) -= xi.trace();
      }
      if (phase1) corr(ny) -= dx_cap_a * dz_cap_a / z_cap;

      const Vector rhs = mu_target * hz - c - corr;
      const Vector dy = hllt.solve(rhs);

      double alpha_z = 1.0, alpha_x = 1.0;
      std::vector<Matrix> dz_f(z.size()), dx_f(z.size());
      double dz_cap_f = 0.0, dx_cap_f = 0.0;
      for (std::size_t b = 0; b < z.size(); ++b) {
        dz_f[b] = dz_block(b, dy);
        Matrix xdz = x[b] * dz_f[b] * zinv[b];
        Matrix second = dx_a[b] * dz_a[b] * zinv[b];
        dx_f[b] = symmetrize(mu_target * zinv[b] - x[b] -
                             0.5 * (xdz + xdz.transpose()) -
                             0.5 * (second + second.transpose()));
        alpha_z = std::min(alpha_z,
                           kStepFraction * max_negative_step(z_llt[b], dz_f[b]));
        alpha_x = std::min(alpha_x,
                           kStepFraction * max_negative_step(x_llt[b], dx_f[b]));
      }
      if (phase1) {
        dz_cap_f = -dy(ny);
        dx_cap_f = mu_target / z_cap - x_cap - x_cap * dz_cap_f / z_cap -
                   dx_cap_a * dz_cap_a / z_cap;
        if (dz_cap_f < 0.0)
          alpha_z = std::min(alpha_z, -kStepFraction * z_cap / dz_cap_f);
        if (dx_cap_f < 0.0)
          alpha_x = std::min(alpha_x, -kStepFraction * x_cap / dx_cap_f);
      }

      if (alpha_z < 1e-10 && alpha_x < 1e-10)
        return SdpStatus::IterationLimit;  // stalled

      y += alpha_z * dy;
      for (std::size_t b = 0; b < z.size(); ++b)
        x[b] = symmetrize(x[b] + alpha_x * dx_f[b]);
      if (phase1) x_cap += alpha_x * dx_cap_f;
      refresh_z();

      if (opts.verbose) {
        std::cerr << "ipm iter " << total_iterations << " mu " << mu_now
                  << " sigma " << sigma << " alpha " << alpha_z << "/"
                  << alpha_x;
        if (phase1) std::cerr << " t " << y(ny);
        std::cerr << "\n";
      }
    }
    return SdpStatus::IterationLimit;
  }

  /// Certified margin: min eigenvalue over blocks of the unscaled
  /// constraints at the current y (margin variable excluded).
  double certified_margin() {
    const bool saved = phase1;
    const double t = margin_t();
    double worst = std::numeric_limits<double>::infinity();
    refresh_z();
    for (std::size_t b = 0; b < z.size(); ++b) {
      Matrix zb = z[b];
      if (saved) zb.diagonal().array() += t;  // strip the margin shift
      worst = std::min(worst, min_eigenvalue_sym(zb) / block_scale[b]);
    }
    return worst;
  }
};

}  // namespace

SdpResult solve_structured_sdp(const SdpProblem& problem,
                               const SdpOptions& options) {
  if (problem.unknown_dim <= 0 || problem.unknown_count <= 0)
    throw DimensionError("sdp: empty unknown description");
  if (problem.blocks.empty())
    throw DimensionError("sdp: no constraint blocks");
  if (problem.trace_weight.size() != 0 &&
      problem.trace_weight.size() != problem.unknown_count)
    throw DimensionError("sdp: trace weight length mismatch");

  Ipm ipm(problem, options);
  SdpResult result;

  // ---- Phase 1: maximize the uniform margin t.
  ipm.phase1 = true;
  ipm.t_cap = options.margin_cap;
  double t0 = 0.0;
  for (std::size_t b = 0; b < ipm.k_scaled.size(); ++b)
    t0 = std::min(t0, min_eigenvalue_sym(ipm.k_scaled[b]));
  t0 -= 1.0;
  ipm.y = Vector::Zero(ipm.ny + 1);
  ipm.y(ipm.ny) = t0;
  ipm.x.assign(problem.blocks.size(), Matrix::Identity(ipm.s, ipm.s));
  ipm.x_cap = 1.0;

  Vector c1 = Vector::Zero(ipm.ny + 1);
  c1(ipm.ny) = -1.0;  // min -t
  const bool wants_trace = problem.trace_weight.size() > 0;
  const double exit_t = wants_trace
                            ? std::max(options.feasibility_target, 1e-2)
                            : options.feasibility_target;
  auto phase1_exit = [&]() { return ipm.y(ipm.ny) >= exit_t; };

  SdpStatus s1 = ipm.iterate(c1, kConvergedGap, phase1_exit,
                             options.max_iterations);
  result.iterations = ipm.total_iterations;
  const double t_star = ipm.y(ipm.ny);

  if (s1 == SdpStatus::NumericalTrouble) {
    result.status = SdpStatus::NumericalTrouble;
    result.message = "phase 1 linear algebra breakdown";
    return result;
  }
  if (s1 == SdpStatus::Optimal && t_star <= kInfeasibleMargin) {
    result.status = SdpStatus::Infeasible;
    std::ostringstream msg;
    msg << "max feasibility margin " << t_star << " (not positive)";
    result.message = msg.str();
    return result;
  }
  if (t_star <= 0.0) {
    result.status = SdpStatus::IterationLimit;
    std::ostringstream msg;
    msg << "phase 1 undecided after " << ipm.total_iterations
        << " iterations (t = " << t_star << ")";
    result.message = msg.str();
    return result;
  }

  // Strictly feasible point in hand.
  result.status = SdpStatus::Feasible;

  // ---- Phase 2: minimize the trace objective from the interior point.
  if (wants_trace) {
    Vector y2 = ipm.y.head(ipm.ny);
    ipm.phase1 = false;
    ipm.y = y2;
    ipm.x.assign(problem.blocks.size(), Matrix::Identity(ipm.s, ipm.s));

    Vector c2 = Vector::Zero(ipm.ny);
    for (Index k = 0; k < ipm.nb; ++k)
      for (Index a = 0; a < ipm.ns; ++a)
        if (ipm.tab.row[static_cast<std::size_t>(a)] ==
            ipm.tab.col[static_cast<std::size_t>(a)])
          c2(k * ipm.ns + a) = problem.trace_weight(k);

    SdpStatus s2 = ipm.iterate(c2, options.gap_tol, nullptr,
                               options.max_iterations);
    result.iterations = ipm.total_iterations;
    if (s2 == SdpStatus::Optimal) {
      result.status = SdpStatus::Optimal;
    } else {
      result.status = SdpStatus::Feasible;
      result.message = "trace objective not fully converged";
    }
  }

  result.unknowns.resize(ipm.nb);
  for (Index k = 0; k < ipm.nb; ++k) result.unknowns[k] = ipm.unknown(k);
  result.certified_margin = ipm.certified_margin();
  if (problem.trace_weight.size() > 0) {
    result.objective = 0.0;
    for (Index k = 0; k < ipm.nb; ++k)
      result.objective += problem.trace_weight(k) * result.unknowns[k].trace();
  }
  if (result.certified_margin <= 0.0 && result.status != SdpStatus::Infeasible) {
    result.status = SdpStatus::NumericalTrouble;
    std::ostringstream msg;
    msg << "returned point lost strict feasibility (margin "
        << result.certified_margin << ")";
    result.message = msg.str();
  }
  return result;
}

}  // namespace lpvred
