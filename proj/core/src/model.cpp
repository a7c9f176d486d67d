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

#include "lpvred/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"
#include "lpvred/rng.hpp"

namespace lpvred {

namespace {

void check_block_list(const std::vector<Matrix>& blocks, Index rows,
                      Index cols, const char* name) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != rows || blocks[i].cols() != cols) {
      std::ostringstream msg;
      msg << name << " block " << i << " is " << blocks[i].rows() << "x"
          << blocks[i].cols() << ", expected " << rows << "x" << cols;
      throw DimensionError(msg.str());
    }
  }
}

Matrix combine(const std::vector<Matrix>& blocks, const Vector& coeff) {
  Matrix out = blocks[0] * coeff(0);
  for (std::size_t i = 1; i < blocks.size(); ++i)
    out.noalias() += coeff(static_cast<Index>(i)) * blocks[i];
  return out;
}

Matrix stack(const std::vector<Matrix>& blocks) {
  const Index rows = blocks[0].rows();
  Matrix out(rows * static_cast<Index>(blocks.size()), blocks[0].cols());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out.middleRows(static_cast<Index>(i) * rows, rows) = blocks[i];
  return out;
}

}  // namespace

AffineLpvModel::AffineLpvModel(std::vector<Matrix> a, std::vector<Matrix> b,
                               std::vector<Matrix> c, std::vector<Matrix> d,
                               ParameterBox box, TimeKind time, double step)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)),
      box_(std::move(box)),
      time_(time),
      step_(step) {
  const std::size_t nb = a_.size();
  if (nb == 0) throw DimensionError("AffineLpvModel: empty block list");
  if (b_.size() != nb || c_.size() != nb || d_.size() != nb)
    throw DimensionError("AffineLpvModel: block lists differ in length");
  if (box_.dim() != static_cast<Index>(nb) - 1)
    throw DimensionError(
        "AffineLpvModel: box dimension must equal block count - 1");
  n_ = a_[0].rows();
  m_ = b_[0].cols();
  q_ = c_[0].rows();
  if (a_[0].cols() != n_) throw DimensionError("AffineLpvModel: A not square");
  check_block_list(a_, n_, n_, "A");
  check_block_list(b_, n_, m_, "B");
  check_block_list(c_, q_, n_, "C");
  check_block_list(d_, q_, m_, "D");
  if (time_ == TimeKind::Discrete) {
    if (!(step_ > 0.0))
      throw ConfigError("AffineLpvModel: discrete model needs step > 0");
  } else {
    step_ = 0.0;
  }

  // Normalize the scheduling box to the unit cube: offsets fold into
  // block 0, axis widths scale blocks 1..l, rate bounds rescale.
  if (!box_.is_unit(1e-12)) {
    const Vector lo = box_.lower();
    const Vector wd = box_.width();
    for (Index i = 0; i < box_.dim(); ++i) {
      a_[0] += lo(i) * a_[i + 1];
      b_[0] += lo(i) * b_[i + 1];
      c_[0] += lo(i) * c_[i + 1];
      d_[0] += lo(i) * d_[i + 1];
      a_[i + 1] *= wd(i);
      b_[i + 1] *= wd(i);
      c_[i + 1] *= wd(i);
      d_[i + 1] *= wd(i);
    }
    original_box_ = std::make_pair(lo, box_.upper());
    ParameterBox unit_box = ParameterBox::unit(box_.dim());
    if (box_.has_rate_bounds())
      unit_box.set_rate_bounds(box_.rate_lower().cwiseQuotient(wd),
                               box_.rate_upper().cwiseQuotient(wd));
    box_ = std::move(unit_box);
  }
}

Vector AffineLpvModel::coefficients(const Vector& theta) const {
  if (theta.size() != l())
    throw DimensionError("coefficients: theta has wrong length");
  Vector c(l() + 1);
  c(0) = 1.0;
  c.tail(l()) = theta;
  return c;
}

LtiRealization AffineLpvModel::evaluate_at(const Vector& theta) const {
  box_.require_inside(theta);
  return evaluate_chart(coefficients(theta));
}

LtiRealization AffineLpvModel::evaluate_chart(const Vector& coeff) const {
  if (coeff.size() != l() + 1)
    throw DimensionError("evaluate_chart: coefficient length mismatch");
  LtiRealization r;
  r.A = combine(a_, coeff);
  r.B = combine(b_, coeff);
  r.C = combine(c_, coeff);
  r.D = combine(d_, coeff);
  r.time = time_;
  r.step = step_;
  return r;
}

Matrix AffineLpvModel::stacked_a() const { return stack(a_); }
Matrix AffineLpvModel::stacked_b() const { return stack(b_); }
Matrix AffineLpvModel::stacked_c() const { return stack(c_); }
Matrix AffineLpvModel::stacked_d() const { return stack(d_); }

std::vector<Matrix> AffineLpvModel::split_stacked(const Matrix& stacked,
                                                  Index block_rows) {
  if (block_rows <= 0 || stacked.rows() % block_rows != 0)
    throw DimensionError("split_stacked: rows not a multiple of block size");
  const Index count = stacked.rows() / block_rows;
  std::vector<Matrix> blocks;
  blocks.reserve(count);
  for (Index i = 0; i < count; ++i)
    blocks.push_back(stacked.middleRows(i * block_rows, block_rows));
  return blocks;
}

StabilityReport AffineLpvModel::check_stability(int samples,
                                                std::uint64_t seed) const {
  StabilityReport report;
  report.worst_margin = -std::numeric_limits<double>::infinity();
  std::vector<Vector> points = box_.vertices();
  const std::vector<Vector> interior = box_.sample(samples, seed);
  points.insert(points.end(), interior.begin(), interior.end());
  for (const Vector& theta : points) {
    const Matrix a = combine(a_, coefficients(theta));
    const double margin = time_ == TimeKind::Continuous
                              ? max_real_eigenvalue(a)
                              : spectral_radius(a) - 1.0;
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.worst_theta = theta;
    }
  }
  report.points_checked = static_cast<int>(points.size());
  report.stable = report.worst_margin < 0.0;
  return report;
}

void AffineLpvModel::require_stable(int samples, std::uint64_t seed) const {
  const StabilityReport report = check_stability(samples, seed);
  if (!report.stable) {
    std::ostringstream msg;
    msg << "model unstable on the box: margin " << report.worst_margin
        << " at theta = [" << report.worst_theta.transpose() << "]";
    throw StabilityError(msg.str());
  }
}

void AffineLpvModel::annotate_original_box(const Vector& lower,
                                           const Vector& upper) {
  if (lower.size() != l() || upper.size() != l()) {
    throw DimensionError("original box dimension mismatch");
  }
  original_box_ = std::make_pair(lower, upper);
}

AffineLpvModel apply_transformation(const AffineLpvModel& model,
                                    const Matrix& t) {
  const Index dim = model.l() + 1;
  if (t.rows() != dim || t.cols() != dim)
    throw DimensionError("apply_transformation: T must be (l+1) x (l+1)");
  const double dev = (t.transpose() * t - Matrix::Identity(dim, dim)).norm();
  if (dev > 1e-10) {
    std::ostringstream msg;
    msg << "apply_transformation: T not orthonormal, |T^T T - I| = " << dev;
    throw ValidationError(msg.str());
  }
  // New blocks M'_j = sum_k T(k, j) M_k, so that evaluating the result
  // at T^T c reproduces the original model at c.
  auto recombine = [&](const std::vector<Matrix>& blocks) {
    std::vector<Matrix> out(blocks.size());
    for (Index j = 0; j < dim; ++j) {
      Matrix acc = t(0, j) * blocks[0];
      for (Index k = 1; k < dim; ++k)
        acc.noalias() += t(k, j) * blocks[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(j)] = std::move(acc);
    }
    return out;
  };
  return AffineLpvModel(recombine(model.a_blocks()), recombine(model.b_blocks()),
                        recombine(model.c_blocks()), recombine(model.d_blocks()),
                        model.box(), model.time(), model.step());
}

AffineLpvModel apply_projection(const AffineLpvModel& model,
                                const ParameterProjection& projection) {
  const Index dim = model.l() + 1;
  if (projection.chart_dim() != dim)
    throw DimensionError("apply_projection: chart dimension mismatch");
  const Matrix pi = projection.projector();
  // Blocks of the reduced model: M^r_j = sum_k Pi(k, j) M_k; evaluation
  // at c then equals evaluation of the original at Pi c.
  auto recombine = [&](const std::vector<Matrix>& blocks) {
    std::vector<Matrix> out(blocks.size());
    for (Index j = 0; j < dim; ++j) {
      Matrix acc = pi(0, j) * blocks[0];
      for (Index k = 1; k < dim; ++k)
        acc.noalias() += pi(k, j) * blocks[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(j)] = std::move(acc);
    }
    return out;
  };
  return AffineLpvModel(recombine(model.a_blocks()), recombine(model.b_blocks()),
                        recombine(model.c_blocks()), recombine(model.d_blocks()),
                        model.box(), model.time(), model.step());
}

AffineLpvModel freeze_parameters(const AffineLpvModel& model,
                                 const std::vector<Index>& frozen,
                                 const Vector& values) {
  if (static_cast<Index>(frozen.size()) != values.size())
    throw DimensionError("freeze_parameters: index/value length mismatch");
  std::set<Index> seen;
  std::vector<Matrix> a = model.a_blocks();
  std::vector<Matrix> b = model.b_blocks();
  std::vector<Matrix> c = model.c_blocks();
  std::vector<Matrix> d = model.d_blocks();
  for (std::size_t k = 0; k < frozen.size(); ++k) {
    const Index i = frozen[k];
    if (i < 0 || i >= model.l())
      throw DimensionError("freeze_parameters: parameter index out of range");
    if (!seen.insert(i).second)
      throw ValidationError("freeze_parameters: duplicate parameter index");
    const double v = values(static_cast<Index>(k));
    const std::size_t bi = static_cast<std::size_t>(i) + 1;
    a[0] += v * a[bi];
    b[0] += v * b[bi];
    c[0] += v * c[bi];
    d[0] += v * d[bi];
    a[bi].setZero();
    b[bi].setZero();
    c[bi].setZero();
    d[bi].setZero();
  }
  return AffineLpvModel(std::move(a), std::move(b), std::move(c), std::move(d),
                        model.box(), model.time(), model.step());
}

AffineLpvModel difference_model(const AffineLpvModel& lhs,
                                const AffineLpvModel& rhs) {
  if (lhs.l() != rhs.l() || lhs.m() != rhs.m() || lhs.q() != rhs.q())
    throw DimensionError("difference_model: incompatible interfaces");
  if (lhs.time() != rhs.time() || lhs.step() != rhs.step())
    throw ConfigError("difference_model: time axes differ");
  const Index na = lhs.n();
  const Index nb = rhs.n();
  std::vector<Matrix> a, b, c, d;
  for (Index k = 0; k <= lhs.l(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    Matrix ak = Matrix::Zero(na + nb, na + nb);
    ak.topLeftCorner(na, na) = lhs.a_blocks()[i];
    ak.bottomRightCorner(nb, nb) = rhs.a_blocks()[i];
    Matrix bk(na + nb, lhs.m());
    bk.topRows(na) = lhs.b_blocks()[i];
    bk.bottomRows(nb) = rhs.b_blocks()[i];
    Matrix ck(lhs.q(), na + nb);
    ck.leftCols(na) = lhs.c_blocks()[i];
    ck.rightCols(nb) = -rhs.c_blocks()[i];
    a.push_back(std::move(ak));
    b.push_back(std::move(bk));
    c.push_back(std::move(ck));
    d.push_back(lhs.d_blocks()[i] - rhs.d_blocks()[i]);
  }
  return AffineLpvModel(std::move(a), std::move(b), std::move(c), std::move(d),
                        lhs.box(), lhs.time(), lhs.step());
}

AffineLpvModel error_system(const AffineLpvModel& model,
                            const ParameterProjection& projection) {
  return difference_model(model, apply_projection(model, projection));
}

const char* to_string(ReductionMethod method) {
  switch (method) {
    case ReductionMethod::Hankel: return "hankel";
    case ReductionMethod::Tscm: return "tscm";
    case ReductionMethod::Scm: return "scm";
    case ReductionMethod::Subsys: return "subsys";
  }
  return "unknown";
}

ReductionMethod reduction_method_from_string(const std::string& name) {
  if (name == "hankel") return ReductionMethod::Hankel;
  if (name == "tscm") return ReductionMethod::Tscm;
  if (name == "scm") return ReductionMethod::Scm;
  if (name == "subsys") return ReductionMethod::Subsys;
  throw ConfigError("unknown reduction method: " + name);
}

namespace {

/// Chart axes selected by an axis-column projection, or nullopt when a
/// column mixes directions.
std::optional<std::vector<Index>> axis_columns(const Matrix& t) {
  std::vector<Index> axes;
  for (Index j = 0; j < t.cols(); ++j) {
    Index axis = -1;
    for (Index i = 0; i < t.rows(); ++i) {
      const double v = std::abs(t(i, j));
      if (v > 1e-12) {
        if (axis >= 0 || std::abs(v - 1.0) > 1e-12) return std::nullopt;
        axis = i;
      }
    }
    if (axis < 0) return std::nullopt;
    axes.push_back(axis);
  }
  return axes;
}

}  // namespace

AffineLpvModel reduce_model(const AffineLpvModel& model,
                            const ParameterProjection& projection,
                            ReductionMethod method) {
  if (method != ReductionMethod::Subsys)
    return apply_projection(model, projection);
  const auto axes = axis_columns(projection.matrix());
  if (!axes)
    throw ValidationError(
        "reduce_model: subsystem projections must select chart axes");
  std::set<Index> kept(axes->begin(), axes->end());
  std::vector<Index> dropped;
  for (Index i = 0; i < model.l(); ++i)
    if (!kept.count(i + 1)) dropped.push_back(i);
  const Vector center = model.box().center();
  Vector values(static_cast<Index>(dropped.size()));
  for (std::size_t k = 0; k < dropped.size(); ++k)
    values(static_cast<Index>(k)) = center(dropped[k]);
  return freeze_parameters(model, dropped, values);
}

}  // namespace lpvred
