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

#include "lpvred/hankel_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/rng.hpp"

namespace lpvred {

namespace {

/// Relative floor under which a per-point discrepancy is treated as
/// exactly zero; sigma_max is nonsmooth there and the singular vectors
/// carry no information.
constexpr double kZeroSigma = 1e-14;

std::vector<std::vector<Index>> axis_combinations(Index l, Index k,
                                                  std::size_t cap) {
  std::vector<std::vector<Index>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > l) return out;
  std::vector<Index> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), Index{1});
  while (true) {
    out.push_back(c);
    if (out.size() >= cap) break;
    Index i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == l - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::string combo_label(const std::vector<Index>& combo) {
  std::string s = "axes[0";
  for (Index a : combo) s += "," + std::to_string(a);
  return s + "]";
}

struct DescentOutcome {
  Matrix t;
  double objective = 0.0;
  int iterations = 0;
};

DescentOutcome descend(const HankelObjective& obj, Matrix t,
                       const HankelReduceOptions& options) {
  DescentOutcome out;
  const double j0 = obj.objective(t);
  const double scale = std::max(j0, 1e-12);
  const int stages = std::max(1, options.anneal_stages);
  const int per_stage = std::max(1, options.max_iters / stages);
  Matrix grad(t.rows(), t.cols());
  Matrix probe_grad(t.rows(), t.cols());
  for (int stage = 0; stage < stages; ++stage) {
    const double tau = options.tau * scale / std::pow(10.0, stage);
    double alpha = 1.0;
    for (int it = 0; it < per_stage; ++it) {
      ++out.iterations;
      const double j = obj.smooth_objective(t, tau, grad);
      const Matrix sym_tg =
          0.5 * (t.transpose() * grad + grad.transpose() * t);
      const Matrix gt = grad - t * sym_tg;
      const double gn = gt.norm();
      if (gn <= options.conv_tol * std::max(1.0, j)) break;
      bool moved = false;
      for (int h = 0; h < 30; ++h) {
        const Matrix cand = orthonormalize(t - alpha * gt);
        const double jc = obj.smooth_objective(cand, tau, probe_grad);
        if (jc <= j - 1e-4 * alpha * gn * gn) {
          t = cand;
          alpha = std::min(2.0 * alpha, 1e3);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
  }
  out.objective = obj.objective(t);
  out.t = std::move(t);
  return out;
}

}  // namespace

HankelObjective::HankelObjective(const AffineLpvModel& model,
                                 const AffineGramian& p,
                                 const AffineGramian& q, const EvalSet& eval) {
  if (p.kind != GramianKind::Controllability ||
      q.kind != GramianKind::Observability)
    throw ValidationError(
        "HankelObjective expects a (controllability, observability) pair");
  if (p.n() != model.n() || q.n() != model.n() || p.l() != model.l() ||
      q.l() != model.l())
    throw DimensionError("HankelObjective: gramians do not match the model");
  p_ = p.blocks;
  q_ = q.blocks;
  for (const Vector& theta : eval.points(model.box()))
    pts_.push_back(model.coefficients(theta));
  if (pts_.empty()) throw ValidationError("HankelObjective: no eval points");
  const Index n = p_.front().rows();
  for (const Vector& c : pts_) {
    const Matrix m = combine(p_, c) * combine(q_, c).transpose();
    scale_ = std::max(scale_, m.norm());
    m_ref_.push_back(m);
  }
  wu_.assign(pts_.size(), Vector::Constant(n, 1.0 / std::sqrt(double(n))));
  ws_ = wu_;
}

HankelObjective::HankelObjective(std::vector<Matrix> p_blocks,
                                 std::vector<Matrix> q_blocks,
                                 std::vector<Vector> chart_points)
    : p_(std::move(p_blocks)), q_(std::move(q_blocks)),
      pts_(std::move(chart_points)) {
  if (p_.empty() || p_.size() != q_.size())
    throw DimensionError("HankelObjective: block lists disagree");
  const Index n = p_.front().rows();
  const Index chart = static_cast<Index>(p_.size());
  for (const Matrix& blk : p_)
    if (blk.rows() != n || blk.cols() != n)
      throw DimensionError("HankelObjective: ragged blocks");
  for (const Matrix& blk : q_)
    if (blk.rows() != n || blk.cols() != n)
      throw DimensionError("HankelObjective: ragged blocks");
  if (pts_.empty()) throw ValidationError("HankelObjective: no eval points");
  for (const Vector& c : pts_)
    if (c.size() != chart)
      throw DimensionError("HankelObjective: point has wrong chart size");
  for (const Vector& c : pts_) {
    const Matrix m = combine(p_, c) * combine(q_, c).transpose();
    scale_ = std::max(scale_, m.norm());
    m_ref_.push_back(m);
  }
  wu_.assign(pts_.size(), Vector::Constant(n, 1.0 / std::sqrt(double(n))));
  ws_ = wu_;
}

Matrix HankelObjective::combine(const std::vector<Matrix>& blocks,
                                const Vector& v) const {
  Matrix f = Matrix::Zero(blocks.front().rows(), blocks.front().cols());
  for (Index k = 0; k < v.size(); ++k)
    if (v(k) != 0.0) f += v(k) * blocks[static_cast<std::size_t>(k)];
  return f;
}

double HankelObjective::objective(const Matrix& t) const {
  if (t.rows() != chart_dim() || t.cols() < 1 || t.cols() > chart_dim())
    throw DimensionError("HankelObjective: projection has wrong shape");
  double worst = 0.0;
  for (std::size_t w = 0; w < pts_.size(); ++w) {
    const Vector v = t * (t.transpose() * pts_[w]);
    const Matrix e = m_ref_[w] - combine(p_, v) * combine(q_, v).transpose();
    Eigen::JacobiSVD<Matrix> svd(e);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

double HankelObjective::smooth_objective(const Matrix& t, double tau,
                                         Matrix& grad) const {
  if (t.rows() != chart_dim() || t.cols() < 1 || t.cols() > chart_dim())
    throw DimensionError("HankelObjective: projection has wrong shape");
  if (!(tau > 0.0))
    throw ValidationError("HankelObjective: tau must be positive");
  const std::size_t np = pts_.size();
  const Index chart = chart_dim();
  std::vector<double> sig(np);
  std::vector<Vector> gvec(np);
  for (std::size_t w = 0; w < np; ++w) {
    const Vector v = t * (t.transpose() * pts_[w]);
    const Matrix fp = combine(p_, v);
    const Matrix fq = combine(q_, v);
    const Matrix e = m_ref_[w] - fp * fq.transpose();
    Vector& u = wu_[w];
    Vector& s = ws_[w];
    double sigma = 0.0;
    double prev = -1.0;
    for (int k = 0; k < 60; ++k) {
      Vector eu = e * s;
      const double nu = eu.norm();
      if (nu <= kZeroSigma * scale_) {
        sigma = 0.0;
        break;
      }
      u = eu / nu;
      Vector es = e.transpose() * u;
      const double ns = es.norm();
      if (ns <= kZeroSigma * scale_) {
        sigma = 0.0;
        break;
      }
      s = es / ns;
      sigma = ns;
      if (std::abs(sigma - prev) <= 1e-12 * std::max(1.0, sigma)) break;
      prev = sigma;
    }
    sig[w] = sigma;
    if (sigma > kZeroSigma * scale_) {
      // d sigma = -(a + b)^T dv with dv the perturbation of TT^T c.
      const Vector qt = fq * s;
      const Vector pt = fp * u;
      Vector g(chart);
      for (Index k = 0; k < chart; ++k)
        g(k) = u.dot(p_[static_cast<std::size_t>(k)] * qt) +
               s.dot(q_[static_cast<std::size_t>(k)] * pt);
      gvec[w] = g;
    }
  }
  const double mx = *std::max_element(sig.begin(), sig.end());
  double z = 0.0;
  for (double sg : sig) z += std::exp((sg - mx) / tau);
  grad.setZero(chart, t.cols());
  for (std::size_t w = 0; w < np; ++w) {
    if (gvec[w].size() == 0) continue;
    const double lambda = std::exp((sig[w] - mx) / tau) / z;
    if (lambda <= 0.0) continue;
    const Vector& c = pts_[w];
    const Vector& g = gvec[w];
    grad.noalias() -= lambda * (g * (c.transpose() * t));
    grad.noalias() -= lambda * (c * (g.transpose() * t));
  }
  return mx + tau * std::log(z);
}

HankelReduceResult optimize_projection(const HankelObjective& objective,
                                       Index order,
                                       const HankelReduceOptions& options,
                                       const Matrix* warm_start) {
  const Index chart = objective.chart_dim();
  const Index l = chart - 1;
  if (order < 0 || order > l)
    throw DomainError("optimize_projection: order out of range");
  const Index cols = order + 1;

  HankelReduceResult best;
  if (cols == chart) {
    best.projection = ParameterProjection::identity(l);
    best.objective = objective.objective(best.projection);
    best.pool_index = 0;
    best.start_label = "identity";
    return best;
  }

  struct Start {
    Matrix t;
    std::string label;
  };
  std::vector<Start> pool;
  for (const auto& combo : axis_combinations(l, order, 64)) {
    std::vector<Index> axes{0};
    axes.insert(axes.end(), combo.begin(), combo.end());
    pool.push_back(
        {ParameterProjection::axes(l, axes).matrix(), combo_label(combo)});
  }
  if (warm_start != nullptr) {
    if (warm_start->rows() != chart || warm_start->cols() != cols)
      throw DimensionError("optimize_projection: warm start has wrong shape");
    pool.push_back({orthonormalize(*warm_start), "warm"});
  }
  for (std::size_t i = 0; i < options.extra_starts.size(); ++i) {
    const Matrix& frame = options.extra_starts[i];
    if (frame.rows() != chart || frame.cols() < cols) continue;
    pool.push_back({orthonormalize(Matrix(frame.leftCols(cols))),
                    "extra#" + std::to_string(i)});
  }
  for (int i = 0; i < options.n_starts; ++i) {
    Rng rng = make_rng(derive_seed(options.seed, 9000 + std::uint64_t(i)));
    pool.push_back({random_orthonormal(chart, cols, rng),
                    "random#" + std::to_string(i)});
  }

  best.objective = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    DescentOutcome cand = descend(objective, pool[i].t, options);
    if (cand.objective < best.objective) {
      best.objective = cand.objective;
      best.projection = ParameterProjection(std::move(cand.t));
      best.pool_index = static_cast<int>(i);
      best.start_label = pool[i].label;
      best.iterations = cand.iterations;
    }
  }
  return best;
}

std::vector<HankelReduceResult> hankel_order_sweep(
    const HankelObjective& objective, const std::vector<Index>& orders,
    const HankelReduceOptions& options) {
  std::vector<Index> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const Index chart = objective.chart_dim();
  std::vector<HankelReduceResult> out;
  Matrix warm;
  for (const Index order : sorted) {
    const Matrix* warm_ptr = nullptr;
    if (!out.empty() && order + 1 > out.back().projection.n_r()) {
      // Pad the previous winner with deterministic complement
      // directions so the warm candidate subspace is nested.
      Matrix t = out.back().projection.matrix();
      while (t.cols() < order + 1) {
        Vector resid;
        for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
          Rng rng = make_rng(derive_seed(
              options.seed,
              31000 + 97 * std::uint64_t(order) + 11 * attempt + t.cols()));
          const Vector g = random_gaussian(chart, 1, rng);
          resid = g - t * (t.transpose() * g);
          if (resid.norm() > 1e-8) break;
        }
        if (resid.norm() <= 1e-8)
          throw NumericalError("hankel_order_sweep: cannot pad warm start");
        Matrix padded(chart, t.cols() + 1);
        padded.leftCols(t.cols()) = t;
        padded.col(t.cols()) = resid / resid.norm();
        t = std::move(padded);
      }
      warm = std::move(t);
      warm_ptr = &warm;
    }
    out.push_back(optimize_projection(objective, order, options, warm_ptr));
  }
  return out;
}

SubsystemRanking subsystem_hankel_ranking(const AffineLpvModel& model,
                                          const EvalSet& eval) {
  const Index l = model.l();
  SubsystemRanking out;
  out.scores = Vector::Zero(l);
  const std::vector<Vector> pts = eval.points(model.box());
  for (Index i = 0; i < l; ++i) {
    const AffineLpvModel frozen =
        freeze_parameters(model, {i}, Vector::Constant(1, 0.5));
    const AffineLpvModel diff = difference_model(model, frozen);
    double score = 0.0;
    for (const Vector& theta : pts)
      score = std::max(score, hankel_norm(diff.evaluate_at(theta)));
    out.scores(i) = score;
  }
  out.order.resize(static_cast<std::size_t>(l));
  std::iota(out.order.begin(), out.order.end(), Index{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](Index a, Index b) {
                     return out.scores(a) > out.scores(b);
                   });
  return out;
}

ParameterProjection subsystem_projection(const SubsystemRanking& ranking,
                                         Index order) {
  const Index l = ranking.scores.size();
  if (order < 0 || order > l)
    throw DomainError("subsystem_projection: order out of range");
  std::vector<Index> axes{0};
  for (Index j = 0; j < order; ++j)
    axes.push_back(ranking.order[static_cast<std::size_t>(j)] + 1);
  std::sort(axes.begin(), axes.end());
  return ParameterProjection::axes(l, axes);
}

}  // namespace lpvred
