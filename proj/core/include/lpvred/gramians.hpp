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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lpvred/model.hpp"
#include "lpvred/sdp.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

enum class GramianKind { Controllability, Observability };

const char* to_string(GramianKind kind);

/// Exact Gramians of a frozen-parameter realization.
struct GramianPair {
  Matrix p;  ///< Controllability Gramian.
  Matrix q;  ///< Observability Gramian.
};

/// Solves the Lyapunov (continuous) or Stein (discrete) equations for
/// both Gramians of a stable realization.
/// @throws StabilityError when the realization is not asymptotically
/// stable, NumericalError on solver breakdown.
GramianPair exact_gramians(const LtiRealization& sys);

/// Affine parameter-dependent matrix bound on a Gramian,
///   f(theta) = F_0 + theta_1 F_1 + ... + theta_l F_l,
/// defined over the unit box and certified by vertex LMIs to dominate
/// the exact Gramian at every frozen scheduling point.
struct AffineGramian {
  GramianKind kind = GramianKind::Controllability;
  std::vector<Matrix> blocks;  ///< l+1 symmetric blocks, constant first.
  /// Certified minimum eigenvalue over all constraint blocks at the
  /// returned point (strictly positive for a strictly feasible bound).
  double margin = 0.0;
  /// Weighted-trace objective value; NaN for pure feasibility solves.
  double objective = 0.0;
  SdpStatus status = SdpStatus::Feasible;
  bool rate_bounded = false;
  /// Lyapunov margin the family was assembled with.
  double delta = 0.0;
  /// Interior curvature excess of the quadratic constraint at this
  /// solution (see lyapunov_curvature); the vertex certificate extends
  /// to the whole box when curvature <= delta + margin.
  double curvature = 0.0;
  bool box_certified = false;

  Index n() const { return blocks.empty() ? 0 : blocks.front().rows(); }
  Index l() const { return static_cast<Index>(blocks.size()) - 1; }

  /// f(theta) at a normalized scheduling point (no box check).
  Matrix evaluate(const Vector& theta) const;

  /// f at an arbitrary chart coefficient vector (length l+1); projected
  /// coefficient vectors are the intended use.
  Matrix evaluate_chart(const Vector& coeff) const;
};

struct LmiBuildOptions {
  /// Minimize the weighted trace of the bound (tr f at the box center)
  /// after the feasibility phase; false keeps the first strictly
  /// feasible point, which is faster but looser.
  bool trace_min = true;
  /// Stability margin added to the Lyapunov blocks. Nonpositive
  /// selects the default 1e-6 * sigma_max(A_0).
  double delta = -1.0;
  /// Positivity margin: vertex values (and, where enforced, individual
  /// blocks) must dominate epsilon * I.
  double epsilon = 1e-8;
};

/// Assembled vertex LMI family for one Gramian bound.
struct LmiProblem {
  GramianKind kind = GramianKind::Controllability;
  bool rate_bounded = false;
  bool block_positivity = false;
  bool trace_min = false;
  double delta = 0.0;
  double epsilon = 0.0;
  /// Constraint count of the family as quoted in catalogs: 2^(l+1)
  /// static, 3^(l+1) rate-bounded, 2^(l+1) + l with block positivity.
  /// The assembled count can differ (see the builder notes).
  std::size_t catalog_count = 0;
  SdpProblem sdp;

  std::size_t constraint_count() const { return sdp.blocks.size(); }
};

/// Static-parameter family: one Lyapunov block and one positivity
/// block per box vertex, 2^(l+1) constraints in total.
/// @throws ConfigError for discrete-time models (their exact Gramians
/// come from Stein equations; no affine synthesis is provided).
LmiProblem build_static_lmis(const AffineLpvModel& model, GramianKind kind,
                             const LmiBuildOptions& options = {});

/// Rate-bounded family. The Lyapunov blocks gain the parameter
/// velocity term sum_i rate_i * F_i, enforced on the corners of the
/// symmetrized rate box |rate_i| <= max(|lower_i|, |upper_i|), which
/// dominates the stated bounds regardless of the sign convention of
/// the velocity term. Without block positivity every rate corner is
/// paired with every box vertex; with enforce_block_positivity each
/// F_i is constrained positive semidefinite, only the dominating
/// corner is kept, and the family has exactly 2^(l+1) + l blocks.
/// @throws ConfigError when the box has no rate bounds or the model is
/// discrete-time.
LmiProblem build_rate_bounded_lmis(const AffineLpvModel& model,
                                   GramianKind kind,
                                   bool enforce_block_positivity,
                                   const LmiBuildOptions& options = {});

/// Runs the interior-point solver on an assembled family.
/// @throws InfeasibleError when the family is certified infeasible,
/// NumericalError when the solve breaks down or stays undecided.
AffineGramian solve_lmi(const LmiProblem& problem,
                        const SdpOptions& options = {});

struct GramianSynthesisOptions {
  bool rate_bounded = false;
  /// Only used when rate_bounded: constrain each parameter block
  /// positive semidefinite and keep only the dominating rate corner.
  bool block_positivity = true;
  /// Re-solve attempts with an inflated Lyapunov margin until the
  /// vertex certificate extends to the whole box (0 disables).
  int curvature_passes = 3;
  LmiBuildOptions lmi;
  SdpOptions sdp;
};

/// Interior curvature excess of the vertex-enforced Lyapunov
/// constraint: the per-axis quadratic coefficient is
/// L_ii = A_i F_i + F_i A_i^T + B_i B_i^T (transposed data for the
/// observability kind), and on the unit box the constraint can exceed
/// its vertex values by at most sum_i max(0, -lambda_min(L_ii)) / 4.
double lyapunov_curvature(const AffineLpvModel& model, GramianKind kind,
                          const std::vector<Matrix>& blocks);

/// Builds and solves the LMI family for one Gramian bound. The margin
/// is re-inflated until the interior curvature excess is covered, so a
/// returned bound with box_certified set dominates the exact Gramian
/// at every box point, not only at the vertices.
AffineGramian synthesize_gramian(const AffineLpvModel& model,
                                 GramianKind kind,
                                 const GramianSynthesisOptions& options = {});

/// Controllability and observability bounds with shared options.
std::pair<AffineGramian, AffineGramian> synthesize_gramian_pair(
    const AffineLpvModel& model, const GramianSynthesisOptions& options = {});

/// Sampled evidence that an affine bound dominates the exact Gramian.
struct BoundCheck {
  Index points = 0;
  Index violations = 0;
  /// min over points of lambda_min(f - exact) / max(1, lambda_max(f)).
  double worst_rel_gap = 0.0;
  /// lambda_min(f - exact) at the worst point.
  double worst_gap = 0.0;
  Vector worst_theta;
};

/// Checks f(theta) >= exact Gramian on the box vertices plus `samples`
/// seeded interior points; a point violates when the relative gap
/// falls below -tol.
/// @throws StabilityError when the model loses stability at a point.
BoundCheck verify_upper_bound(const AffineLpvModel& model,
                              const AffineGramian& gramian,
                              Index samples = 200, std::uint64_t seed = 42,
                              double tol = 1e-8);

/// Sampled evidence for the parametric Hankel bound
/// lambda_max(P(theta) Q(theta)^T) <= lambda_max(f_P(theta) f_Q(theta)^T).
struct HankelBoundCheck {
  Index points = 0;
  Index violations = 0;
  /// max over points of exact / bound.
  double worst_ratio = 0.0;
  Vector worst_theta;
  /// Largest exact and bound eigenvalues seen over the points.
  double max_exact = 0.0;
  double max_bound = 0.0;
};

/// Checks the coupled eigenvalue bound at the box vertices plus
/// `samples` seeded interior points; a point violates when the exact
/// value exceeds (1 + tol) times the bound.
HankelBoundCheck verify_hankel_bound(const AffineLpvModel& model,
                                     const AffineGramian& p,
                                     const AffineGramian& q,
                                     Index samples = 200,
                                     std::uint64_t seed = 42,
                                     double tol = 1e-8);

}  // namespace lpvred
