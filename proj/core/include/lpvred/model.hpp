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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpvred/parameter_box.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// Frozen state-space realization at one scheduling point.
struct LtiRealization {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix D;
  TimeKind time = TimeKind::Continuous;
  double step = 0.0;  // sample time, discrete systems only

  Index n() const { return A.rows(); }
  Index m() const { return B.cols(); }
  Index q() const { return C.rows(); }
};

/// Result of a pointwise stability scan over the parameter box.
struct StabilityReport {
  bool stable = false;
  /// Worst max real part (continuous) or spectral radius - 1 (discrete).
  double worst_margin = 0.0;
  Vector worst_theta;
  int points_checked = 0;
};

/// State-space model with affine scheduling dependence:
///   A(theta) = A_0 + sum_i theta_i A_i, likewise B, C, D.
///
/// Construction normalizes the parameter box to the unit cube by folding
/// offsets into block 0 and scales into blocks 1..l; the original box is
/// retained for reporting. All evaluation is in normalized coordinates.
class AffineLpvModel {
 public:
  /// Block lists hold l+1 entries each (constant block first).
  /// @throws DimensionError on inconsistent shapes,
  ///         ConfigError on a discrete model without a positive step.
  AffineLpvModel(std::vector<Matrix> a, std::vector<Matrix> b,
                 std::vector<Matrix> c, std::vector<Matrix> d,
                 ParameterBox box, TimeKind time = TimeKind::Continuous,
                 double step = 0.0);

  Index n() const { return n_; }
  Index m() const { return m_; }
  Index q() const { return q_; }
  Index l() const { return static_cast<Index>(a_.size()) - 1; }
  TimeKind time() const { return time_; }
  double step() const { return step_; }

  const std::vector<Matrix>& a_blocks() const { return a_; }
  const std::vector<Matrix>& b_blocks() const { return b_; }
  const std::vector<Matrix>& c_blocks() const { return c_; }
  const std::vector<Matrix>& d_blocks() const { return d_; }

  /// Normalized box; always the unit cube.
  const ParameterBox& box() const { return box_; }

  /// Box the model was constructed with, when it was not already unit.
  const std::optional<std::pair<Vector, Vector>>& original_box() const {
    return original_box_;
  }

  /// Restores the pre-normalization box label on a deserialized model.
  /// Metadata only; the stored blocks stay normalized.
  /// @throws DimensionError on a size mismatch.
  void annotate_original_box(const Vector& lower, const Vector& upper);

  /// Chart coefficient vector c = [1, theta].
  Vector coefficients(const Vector& theta) const;

  /// Realization at a normalized scheduling point.
  /// @throws DomainError naming the violating coordinate when theta
  /// leaves the unit box by more than 1e-9.
  LtiRealization evaluate_at(const Vector& theta) const;

  /// Realization at an arbitrary chart coefficient vector (length l+1).
  /// No box check: projected coefficient vectors may leave the box.
  LtiRealization evaluate_chart(const Vector& coeff) const;

  /// Column-stacked block matrix [A_0; A_1; ...; A_l] ((l+1)n x n);
  /// the same view exists for B, C, D with their own row sizes.
  Matrix stacked_a() const;
  Matrix stacked_b() const;
  Matrix stacked_c() const;
  Matrix stacked_d() const;

  /// Splits a stacked matrix back into l+1 blocks of block_rows rows.
  static std::vector<Matrix> split_stacked(const Matrix& stacked,
                                           Index block_rows);

  /// Pointwise stability scan: box vertices plus seeded interior samples.
  StabilityReport check_stability(int samples = 50,
                                  std::uint64_t seed = 42) const;

  /// Throws StabilityError when check_stability fails.
  void require_stable(int samples = 50, std::uint64_t seed = 42) const;

 private:
  std::vector<Matrix> a_, b_, c_, d_;
  ParameterBox box_;
  TimeKind time_;
  double step_;
  Index n_, m_, q_;
  std::optional<std::pair<Vector, Vector>> original_box_;
};

/// Change of chart basis by an orthonormal (l+1) x (l+1) matrix T
/// (blocks are recombined so that evaluation at T^T c reproduces the
/// original model).
/// @throws ValidationError when T is not orthonormal (deviation norm in
/// the message).
AffineLpvModel apply_transformation(const AffineLpvModel& model,
                                    const Matrix& t);

/// Reduced-order scheduling model: blocks evaluated at T T^T c. The
/// result is affine in the original theta with the same box.
AffineLpvModel apply_projection(const AffineLpvModel& model,
                                const ParameterProjection& projection);

/// Freezes the listed scheduling parameters (0-based indices into
/// theta) at the given values: their blocks fold into block 0 and are
/// zeroed. Chart size is unchanged; frozen axes become inert.
AffineLpvModel freeze_parameters(const AffineLpvModel& model,
                                 const std::vector<Index>& frozen,
                                 const Vector& values);

/// Block-diagonal difference system Sigma_a - Sigma_b (states stacked,
/// outputs subtracted). Models must share m, q, l, time axis and box.
AffineLpvModel difference_model(const AffineLpvModel& a,
                                const AffineLpvModel& b);

/// Error system between a model and its projection-reduced version:
/// 2n states, inputs shared, output y - y_r.
AffineLpvModel error_system(const AffineLpvModel& model,
                            const ParameterProjection& projection);

/// How a projection was produced; selects the reduction semantics.
enum class ReductionMethod { Hankel, Tscm, Scm, Subsys };

const char* to_string(ReductionMethod method);
ReductionMethod reduction_method_from_string(const std::string& name);

/// Builds the reduced model for a projection. Subspace methods apply
/// the chart projection; the subsystem method expects axis columns and
/// freezes the dropped parameters at the box center.
AffineLpvModel reduce_model(const AffineLpvModel& model,
                            const ParameterProjection& projection,
                            ReductionMethod method);

}  // namespace lpvred
