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
#include <vector>

#include "lpvred/gramians.hpp"
#include "lpvred/model.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// Worst-case coupled-Gramian discrepancy of a chart projection,
///   J(T) = max over eval points of
///          sigma_max(f_P(c) f_Q(c)^T - f_P(TT^Tc) f_Q(TT^Tc)^T),
/// with c the chart coefficient vector at the point. Instances hold a
/// warm-started singular-vector cache, so concurrent use requires one
/// instance per worker.
class HankelObjective {
 public:
  /// From synthesized bounds; kinds and dimensions must match the
  /// model. Eval points default to the box vertices.
  HankelObjective(const AffineLpvModel& model, const AffineGramian& p,
                  const AffineGramian& q,
                  const EvalSet& eval = {EvalSet::Kind::Vertices, 0, 42, 11});

  /// Trusted form: raw symmetric blocks and explicit chart coefficient
  /// vectors. Intended for tests with handcrafted geometry.
  HankelObjective(std::vector<Matrix> p_blocks, std::vector<Matrix> q_blocks,
                  std::vector<Vector> chart_points);

  Index chart_dim() const { return static_cast<Index>(p_.size()); }
  Index point_count() const { return static_cast<Index>(pts_.size()); }

  /// Exact objective (full singular value decompositions).
  double objective(const Matrix& t) const;
  double objective(const ParameterProjection& projection) const {
    return objective(projection.matrix());
  }

  /// Log-sum-exp smoothed objective and its Euclidean gradient in T.
  /// Uses warm-started power iteration per point; tau is an absolute
  /// temperature in objective units.
  double smooth_objective(const Matrix& t, double tau, Matrix& grad) const;

 private:
  Matrix combine(const std::vector<Matrix>& blocks, const Vector& v) const;

  std::vector<Matrix> p_, q_;
  std::vector<Vector> pts_;
  std::vector<Matrix> m_ref_;              // f_P(c) f_Q(c)^T per point
  double scale_ = 1.0;                     // magnitude of the references
  mutable std::vector<Vector> wu_, ws_;    // singular vector cache
};

struct HankelReduceOptions {
  /// Random-start count added to the axis-selection pool.
  int n_starts = 8;
  /// Optimizer iteration budget per start (split over anneal stages).
  int max_iters = 200;
  /// Smoothing stages; the temperature divides by 10 per stage.
  int anneal_stages = 3;
  /// Initial smoothing temperature relative to the objective scale.
  double tau = 1e-3;
  /// Stage stops when the Riemannian gradient norm falls below
  /// conv_tol * max(1, J).
  double conv_tol = 1e-8;
  std::uint64_t seed = 42;
  /// Extra warm-start frames added to the pool (covariance-derived
  /// projections and the like). Frames wider than the target keep
  /// their leading columns; narrower frames are skipped.
  std::vector<Matrix> extra_starts;
};

struct HankelReduceResult {
  ParameterProjection projection{Matrix::Identity(1, 1)};
  /// Exact objective at the returned projection.
  double objective = 0.0;
  /// Index of the winning start in the deterministic pool.
  int pool_index = -1;
  std::string start_label;
  /// Descent iterations spent on the winning start.
  int iterations = 0;
};

/// Multi-start Stiefel descent on the smoothed objective for a chart
/// of the given reduction order (order + 1 columns). The start pool
/// is deterministic: axis selections containing the constant
/// direction, an optional warm start, then seeded random frames. Ties
/// resolve to the lowest pool index.
HankelReduceResult optimize_projection(const HankelObjective& objective,
                                       Index order,
                                       const HankelReduceOptions& options = {},
                                       const Matrix* warm_start = nullptr);

/// Ascending-order sweep; each stage warm-starts from the previous
/// winner padded with one deterministic complement direction, so the
/// candidate subspaces are nested.
std::vector<HankelReduceResult> hankel_order_sweep(
    const HankelObjective& objective, const std::vector<Index>& orders,
    const HankelReduceOptions& options = {});

/// Per-parameter influence for the subsystem baseline: parameter i is
/// scored by the worst Hankel norm, over probe points, of the
/// difference between the model and the model with theta_i frozen at
/// the box center.
struct SubsystemRanking {
  Vector scores;             ///< one score per parameter
  std::vector<Index> order;  ///< parameter indices, descending score
};

SubsystemRanking subsystem_hankel_ranking(
    const AffineLpvModel& model,
    const EvalSet& eval = {EvalSet::Kind::Vertices, 0, 42, 11});

/// Axis projection keeping the constant direction and the top-ranked
/// parameters; reduce_model with ReductionMethod::Subsys freezes the
/// complement at the box center.
ParameterProjection subsystem_projection(const SubsystemRanking& ranking,
                                         Index order);

}  // namespace lpvred
