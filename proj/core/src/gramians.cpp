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

#include "lpvred/gramians.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lpvred/errors.hpp"
#include "lpvred/linalg.hpp"
#include "lpvred/lyapunov.hpp"

namespace lpvred {

namespace {

constexpr double kDeltaScale = 1e-6;

Matrix exact_single(const LtiRealization& sys, GramianKind kind) {
  const bool ctrl = kind == GramianKind::Controllability;
  if (sys.time == TimeKind::Continuous) {
    if (!is_hurwitz(sys.A))
      throw StabilityError("exact gramian: A is not Hurwitz");
    if (ctrl)
      return solve_continuous_lyapunov(sys.A, sys.B * sys.B.transpose()).X;
    return solve_continuous_lyapunov(sys.A.transpose(),
                                     sys.C.transpose() * sys.C)
        .X;
  }
  if (!is_schur(sys.A)) throw StabilityError("exact gramian: A is not Schur");
  if (ctrl) return solve_discrete_lyapunov(sys.A, sys.B * sys.B.transpose()).X;
  return solve_discrete_lyapunov(sys.A.transpose(), sys.C.transpose() * sys.C)
      .X;
}

double default_delta(const AffineLpvModel& model) {
  // Relative to the nominal dynamics so the margin survives rescaling.
  return kDeltaScale * std::max(spectral_norm(model.a_blocks().front()), 1e-6);
}

void append_lyapunov_block(SdpProblem& sdp, const LtiRealization& sys,
                           GramianKind kind, const Vector& c,
                           const Vector& rate, double delta,
                           std::string label) {
  SdpBlock blk;
  if (kind == GramianKind::Controllability) {
    blk.A = sys.A;
    blk.K = -(sys.B * sys.B.transpose());
  } else {
    blk.A = sys.A.transpose();
    blk.K = -(sys.C.transpose() * sys.C);
  }
  blk.K.diagonal().array() -= delta;
  blk.lyap_coeff = -c;
  blk.diag_coeff = Vector::Zero(c.size());
  if (rate.size() > 0) blk.diag_coeff.tail(rate.size()) = -rate;
  blk.label = std::move(label);
  sdp.blocks.push_back(std::move(blk));
}

void append_positivity_block(SdpProblem& sdp, const Vector& diag, Index n,
                             double epsilon, std::string label) {
  SdpBlock blk;
  blk.K = Matrix::Zero(n, n);
  blk.K.diagonal().array() -= epsilon;
  blk.lyap_coeff = Vector::Zero(diag.size());
  blk.diag_coeff = diag;
  blk.label = std::move(label);
  sdp.blocks.push_back(std::move(blk));
}

LmiProblem assemble_family(const AffineLpvModel& model, GramianKind kind,
                           const LmiBuildOptions& options, bool rate_bounded,
                           bool block_positivity) {
  if (model.time() != TimeKind::Continuous)
    throw ConfigError(
        "gramian LMI synthesis requires a continuous-time model; "
        "discrete-time Gramians come from exact_gramians");
  const Index n = model.n();
  const Index l = model.l();

  LmiProblem prob;
  prob.kind = kind;
  prob.rate_bounded = rate_bounded;
  prob.block_positivity = rate_bounded && block_positivity;
  prob.trace_min = options.trace_min;
  prob.delta = options.delta > 0.0 ? options.delta : default_delta(model);
  prob.epsilon = options.epsilon;
  prob.sdp.unknown_dim = n;
  prob.sdp.unknown_count = l + 1;

  Vector rate_mag;
  std::vector<Index> rate_axes;  // axes with a nonzero rate magnitude
  if (rate_bounded) {
    if (!model.box().has_rate_bounds())
      throw ConfigError(
          "rate-bounded synthesis requires rate bounds on the parameter box");
    rate_mag = model.box()
                   .rate_lower()
                   .cwiseAbs()
                   .cwiseMax(model.box().rate_upper().cwiseAbs());
    for (Index i = 0; i < l; ++i)
      if (rate_mag(i) > 0.0) rate_axes.push_back(i);
  }

  const std::vector<Vector> verts = model.box().vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const Vector c = model.coefficients(verts[v]);
    const LtiRealization sys = model.evaluate_at(verts[v]);
    const std::string vs = "v" + std::to_string(v);
    if (!rate_bounded) {
      append_lyapunov_block(prob.sdp, sys, kind, c, Vector(), prob.delta,
                            "lyap[" + vs + "]");
    } else if (prob.block_positivity) {
      // Blocks 1..l are positive semidefinite, so the symmetrized
      // upper rate corner dominates every admissible velocity.
      append_lyapunov_block(prob.sdp, sys, kind, c, rate_mag, prob.delta,
                            "lyap[" + vs + ",r+]");
    } else {
      const std::size_t corners = std::size_t{1} << rate_axes.size();
      for (std::size_t r = 0; r < corners; ++r) {
        Vector rate = Vector::Zero(l);
        for (std::size_t j = 0; j < rate_axes.size(); ++j) {
          const bool hi = (r >> (rate_axes.size() - 1 - j)) & 1u;
          const Index axis = rate_axes[j];
          rate(axis) = hi ? rate_mag(axis) : -rate_mag(axis);
        }
        append_lyapunov_block(prob.sdp, sys, kind, c, rate, prob.delta,
                              "lyap[" + vs + ",r" + std::to_string(r) + "]");
      }
    }
    append_positivity_block(prob.sdp, c, n, prob.epsilon, "pos[" + vs + "]");
  }

  if (prob.block_positivity) {
    for (Index i = 1; i <= l; ++i) {
      Vector diag = Vector::Zero(l + 1);
      diag(i) = 1.0;
      append_positivity_block(prob.sdp, diag, n, prob.epsilon,
                              "blockpos[" + std::to_string(i) + "]");
    }
  }

  const std::size_t two_l1 = std::size_t{1} << (l + 1);
  if (!rate_bounded) {
    prob.catalog_count = two_l1;
  } else if (prob.block_positivity) {
    prob.catalog_count = two_l1 + static_cast<std::size_t>(l);
  } else {
    std::size_t three_l1 = 1;
    for (Index i = 0; i <= l; ++i) three_l1 *= 3;
    prob.catalog_count = three_l1;
  }

  if (options.trace_min) {
    // tr f at the box center; equals the vertex-average trace.
    Vector w = Vector::Constant(l + 1, 0.5);
    w(0) = 1.0;
    prob.sdp.trace_weight = w;
  }
  return prob;
}

std::vector<Vector> evaluation_points(const ParameterBox& box, Index samples,
                                      std::uint64_t seed) {
  std::vector<Vector> pts = box.vertices();
  if (samples > 0) {
    const std::vector<Vector> inner =
        box.sample(static_cast<int>(samples), seed);
    pts.insert(pts.end(), inner.begin(), inner.end());
  }
  return pts;
}

}  // namespace

const char* to_string(GramianKind kind) {
  return kind == GramianKind::Controllability ? "controllability"
                                              : "observability";
}

GramianPair exact_gramians(const LtiRealization& sys) {
  return {exact_single(sys, GramianKind::Controllability),
          exact_single(sys, GramianKind::Observability)};
}

Matrix AffineGramian::evaluate(const Vector& theta) const {
  if (blocks.empty()) throw ValidationError("affine gramian has no blocks");
  if (theta.size() != l())
    throw DimensionError("affine gramian: theta has wrong size");
  Matrix f = blocks.front();
  for (Index i = 0; i < theta.size(); ++i) f += theta(i) * blocks[i + 1];
  return f;
}

Matrix AffineGramian::evaluate_chart(const Vector& coeff) const {
  if (coeff.size() != static_cast<Index>(blocks.size()))
    throw DimensionError("affine gramian: coefficient vector has wrong size");
  Matrix f = Matrix::Zero(n(), n());
  for (Index k = 0; k < coeff.size(); ++k)
    if (coeff(k) != 0.0) f += coeff(k) * blocks[k];
  return f;
}

LmiProblem build_static_lmis(const AffineLpvModel& model, GramianKind kind,
                             const LmiBuildOptions& options) {
  return assemble_family(model, kind, options, false, false);
}

LmiProblem build_rate_bounded_lmis(const AffineLpvModel& model,
                                   GramianKind kind,
                                   bool enforce_block_positivity,
                                   const LmiBuildOptions& options) {
  return assemble_family(model, kind, options, true,
                         enforce_block_positivity);
}

AffineGramian solve_lmi(const LmiProblem& problem, const SdpOptions& options) {
  const SdpResult res = solve_structured_sdp(problem.sdp, options);
  switch (res.status) {
    case SdpStatus::Infeasible:
      throw InfeasibleError("gramian LMI family infeasible: " + res.message);
    case SdpStatus::NumericalTrouble:
      throw NumericalError("gramian LMI solve failed: " + res.message);
    case SdpStatus::IterationLimit:
      throw NumericalError("gramian LMI solve undecided: " + res.message);
    default:
      break;
  }
  AffineGramian g;
  g.kind = problem.kind;
  g.blocks = res.unknowns;
  g.margin = res.certified_margin;
  g.objective = problem.sdp.trace_weight.size() > 0
                    ? res.objective
                    : std::numeric_limits<double>::quiet_NaN();
  g.status = res.status;
  g.rate_bounded = problem.rate_bounded;
  g.delta = problem.delta;
  return g;
}

double lyapunov_curvature(const AffineLpvModel& model, GramianKind kind,
                          const std::vector<Matrix>& blocks) {
  if (static_cast<Index>(blocks.size()) != model.l() + 1)
    throw DimensionError("lyapunov_curvature: wrong block count");
  const bool ctrl = kind == GramianKind::Controllability;
  double kappa = 0.0;
  for (Index i = 1; i <= model.l(); ++i) {
    Matrix lii;
    if (ctrl) {
      lii = model.a_blocks()[i] * blocks[i];
      lii += lii.transpose().eval();
      const Matrix& bi = model.b_blocks()[i];
      lii.noalias() += bi * bi.transpose();
    } else {
      lii = model.a_blocks()[i].transpose() * blocks[i];
      lii += lii.transpose().eval();
      const Matrix& ci = model.c_blocks()[i];
      lii.noalias() += ci.transpose() * ci;
    }
    kappa += std::max(0.0, -min_eigenvalue_sym(symmetrize(lii))) / 4.0;
  }
  return kappa;
}

AffineGramian synthesize_gramian(const AffineLpvModel& model, GramianKind kind,
                                 const GramianSynthesisOptions& options) {
  LmiBuildOptions lmi = options.lmi;
  double delta = lmi.delta > 0.0 ? lmi.delta : default_delta(model);
  AffineGramian g;
  for (int pass = 0;; ++pass) {
    lmi.delta = delta;
    const LmiProblem prob =
        options.rate_bounded
            ? build_rate_bounded_lmis(model, kind, options.block_positivity,
                                      lmi)
            : build_static_lmis(model, kind, lmi);
    g = solve_lmi(prob, options.sdp);
    g.curvature = lyapunov_curvature(model, kind, g.blocks);
    g.box_certified = g.curvature <= g.delta + g.margin;
    if (g.box_certified || pass >= options.curvature_passes) break;
    delta = std::max(2.0 * delta, 1.1 * g.curvature);
  }
  return g;
}

std::pair<AffineGramian, AffineGramian> synthesize_gramian_pair(
    const AffineLpvModel& model, const GramianSynthesisOptions& options) {
  return {synthesize_gramian(model, GramianKind::Controllability, options),
          synthesize_gramian(model, GramianKind::Observability, options)};
}

BoundCheck verify_upper_bound(const AffineLpvModel& model,
                              const AffineGramian& gramian, Index samples,
                              std::uint64_t seed, double tol) {
  if (gramian.n() != model.n() || gramian.l() != model.l())
    throw DimensionError("verify_upper_bound: gramian does not match model");
  BoundCheck out;
  out.worst_rel_gap = std::numeric_limits<double>::infinity();
  out.worst_gap = std::numeric_limits<double>::infinity();
  for (const Vector& theta :
       evaluation_points(model.box(), samples, seed)) {
    const Matrix exact = exact_single(model.evaluate_at(theta), gramian.kind);
    const Matrix f = gramian.evaluate(theta);
    const double gap = min_eigenvalue_sym(symmetrize(f - exact));
    const double scale = std::max(1.0, max_eigenvalue_sym(symmetrize(f)));
    const double rel = gap / scale;
    if (rel < out.worst_rel_gap) {
      out.worst_rel_gap = rel;
      out.worst_gap = gap;
      out.worst_theta = theta;
    }
    if (rel < -tol) ++out.violations;
    ++out.points;
  }
  return out;
}

HankelBoundCheck verify_hankel_bound(const AffineLpvModel& model,
                                     const AffineGramian& p,
                                     const AffineGramian& q, Index samples,
                                     std::uint64_t seed, double tol) {
  if (p.kind != GramianKind::Controllability ||
      q.kind != GramianKind::Observability)
    throw ValidationError(
        "verify_hankel_bound expects a (controllability, observability) "
        "pair");
  if (p.n() != model.n() || p.l() != model.l() || q.n() != model.n() ||
      q.l() != model.l())
    throw DimensionError("verify_hankel_bound: gramians do not match model");
  HankelBoundCheck out;
  for (const Vector& theta :
       evaluation_points(model.box(), samples, seed)) {
    const GramianPair exact = exact_gramians(model.evaluate_at(theta));
    const double lam_exact = coupled_max_eigenvalue(exact.p, exact.q);
    const double lam_bound =
        coupled_max_eigenvalue(p.evaluate(theta), q.evaluate(theta));
    const double ratio =
        lam_bound > 0.0
            ? lam_exact / lam_bound
            : (lam_exact > 0.0 ? std::numeric_limits<double>::infinity()
                               : 0.0);
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_theta = theta;
    }
    out.max_exact = std::max(out.max_exact, lam_exact);
    out.max_bound = std::max(out.max_bound, lam_bound);
    if (lam_exact > (1.0 + tol) * lam_bound) ++out.violations;
    ++out.points;
  }
  return out;
}

}  // namespace lpvred
