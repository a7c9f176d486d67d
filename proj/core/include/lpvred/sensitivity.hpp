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

#include <string>
#include <vector>

#include "lpvred/model.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// Transfer matrix D + C (lambda I - A)^-1 B with lambda = j*omega for
/// continuous systems and exp(j*omega*step) for discrete ones. An
/// infinite omega on a continuous system returns D.
/// @throws NumericalError when lambda lies in the spectrum of A.
ComplexMatrix transfer_function(const LtiRealization& sys, double omega);

/// Same evaluated on an affine model at a frozen parameter.
ComplexMatrix transfer_function(const AffineLpvModel& model,
                                const Vector& theta, double omega);

/// Realization of the transfer-function derivative dH/dtheta_i. The
/// carrier is itself an affine model on the same box with 4n states:
///
///   As = [A  0  0  0]   Bs = [B  ]   Cs = [Ci C 0 C],  Ds = Di
///        [0  A  Ai 0]        [0  ]
///        [0  0  A  0]        [B  ]
///        [0  0  0  A]        [Bi ]
///
/// where the parameter-independent couplings Ai, Bi, Ci, Di sit in the
/// constant block. Evaluated at theta its transfer function equals the
/// exact derivative of H(theta, .) in theta_i.
struct SensitivityRealization {
  Index param = 0;  ///< zero-based parameter index
  AffineLpvModel system;
};

/// Builds the 4n-state derivative realization for parameter `param`.
/// @throws DimensionError when param is out of range.
SensitivityRealization build_sensitivity_realization(
    const AffineLpvModel& model, Index param);

/// Derivative transfer matrices dH/dtheta_i(theta, omega) for all i,
/// computed from one shared factorization of (lambda I - A(theta)).
/// Equals the transfer of build_sensitivity_realization pointwise.
std::vector<ComplexMatrix> sensitivity_gains(const AffineLpvModel& model,
                                             const Vector& theta,
                                             double omega);

/// Frequency- or time-domain sensitivity covariance. `entries` is the
/// l x l symmetric nonnegative matrix of worst-case pairwise gains; a
/// parameter no block depends on yields an exactly zero row and column.
struct CovarianceMatrix {
  enum class Kind { Tscm, Scm };

  Kind kind = Kind::Tscm;
  Matrix entries;
  EvalSet eval;

  // frequency grid metadata, TSCM only
  double freq_min = 0.0;
  double freq_max = 0.0;
  int freq_points = 0;

  // discretization metadata, SCM only
  double step = 0.0;
  Index k_max = 0;

  /// Set when the time horizon is shorter than the slowest time
  /// constant; short horizons exclude dynamics from the ranking.
  std::string warning;
};

std::string to_string(CovarianceMatrix::Kind kind);

/// Transfer-sensitivity covariance configuration. The product systems
/// are quadratic in theta, so vertex evaluation alone is not exact;
/// the default set adds seeded interior samples.
struct TscmOptions {
  EvalSet eval{EvalSet::Kind::VerticesPlusSamples, 200, 42, 11};
  double freq_min = 1e-3;
  double freq_max = 1e3;
  int freq_points = 400;
};

/// Pi_ij = max over the theta set and a log frequency grid of
/// sigma_max(Hhat_i^* Hhat_j). Symmetric by construction; each pair is
/// computed once. Discrete models clamp the grid below pi/step.
/// Per-theta work factors one complex LU per frequency.
/// @throws StabilityError when the model is unstable on the box.
CovarianceMatrix tscm(const AffineLpvModel& model,
                      const TscmOptions& options = {});

/// Output sequence y(0..k) of a discrete model at frozen theta from
/// x(j+1) = A x(j) + B u(j), y(j) = C x(j) + D u(j). Column j of
/// `inputs` is u(j); column j of the result is y(j).
/// @throws ConfigError on a continuous model.
Matrix output_evolution(const AffineLpvModel& model, const Vector& theta,
                        const Vector& x0, const Matrix& inputs);

/// Frozen discrete realization together with its exact parameter
/// Jacobian. For a discrete affine model the derivatives are the
/// affine blocks themselves; for a continuous model the zero-order
/// hold couples A and B into the matrix exponential and the chain
/// rule runs through its Frechet derivative.
struct DiscreteDerivatives {
  Matrix a, b, c, d;
  std::vector<Matrix> da, db, dc, dd;  ///< one entry per parameter
  double step = 0.0;

  Index n() const { return a.rows(); }
  Index m() const { return b.cols(); }
  Index q() const { return c.rows(); }
  Index l() const { return static_cast<Index>(da.size()); }
};

/// Exact derivative data of the zero-order-hold discretization at
/// theta. d(e^M)/dtheta_i is read off the doubled block exponential
/// exp([[M, Mi],[0, M]]) with M stacking [A B; 0 0] h.
/// @throws ConfigError unless the model is continuous and step > 0.
DiscreteDerivatives zoh_with_jacobian(const AffineLpvModel& model,
                                      const Vector& theta, double step);

/// Derivative data of a discrete affine model at theta.
/// @throws ConfigError on a continuous model.
DiscreteDerivatives discrete_derivatives(const AffineLpvModel& model,
                                         const Vector& theta);

/// Slowest time constant of A(theta): 1/|Re lambda| seconds for
/// continuous models, -1/ln|lambda| samples for discrete ones, taken
/// over the least damped eigenvalue.
/// @throws StabilityError when A(theta) is not asymptotically stable.
double slowest_time_constant(const AffineLpvModel& model,
                             const Vector& theta);

struct TimeSensitivityOptions {
  /// Append the initial-state column d(C A^k)/dtheta_i x0 to each M^i.
  bool include_initial_state = false;
  Vector x0;
};

/// Sensitivity maps M^i taking the stacked input [u(0); ...; u(k_max)]
/// to the stacked output derivative [dy(0); ...; dy(k_max)]/dtheta_i.
/// Block (r, s) of M^i is the derivative Markov parameter
/// d(C A^{r-s-1} B)/dtheta_i for r > s and d D/dtheta_i on the
/// diagonal, expanded by the product rule. Horizons shorter than
/// slowest_time_constant truncate dynamics; see horizon_warning.
std::vector<Matrix> time_sensitivity_matrices(
    const DiscreteDerivatives& data, Index k_max,
    const TimeSensitivityOptions& options = {});

/// Convenience overload on a discrete affine model.
std::vector<Matrix> time_sensitivity_matrices(
    const AffineLpvModel& model, const Vector& theta, Index k_max,
    const TimeSensitivityOptions& options = {});

/// Non-empty message when k_max samples cover less than the slowest
/// time constant of `a` (the paper's guidance on choosing k_max).
std::string horizon_warning(const Matrix& a, Index k_max);

/// Time-domain covariance configuration. Non-positive step or k_max
/// request the defaults: step = tau/50 and k_max = ceil(5 tau/step)
/// with tau the slowest time constant at the box center.
struct ScmOptions {
  EvalSet eval{EvalSet::Kind::Vertices, 0, 42, 11};
  double step = -1.0;   ///< continuous models only; ignored otherwise
  Index k_max = -1;
  TimeSensitivityOptions time;
};

/// S_ij = max over the theta set of sigma_max(M^{j*} M^i), estimated
/// by power iteration without forming the products. Symmetric by
/// construction. Continuous models are zero-order-hold discretized
/// per theta with the exact parameter Jacobian.
/// @throws StabilityError when the model is unstable on the box.
CovarianceMatrix scm(const AffineLpvModel& model,
                     const ScmOptions& options = {});

/// Projection from the dominant eigenvectors of a covariance matrix.
/// Directions are ranked by |eigenvalue| descending; near-ties order
/// by the dominant axis so exactly diagonal inputs rank by coordinate.
/// `n_r` counts retained chart columns. When include_constant is set
/// the constant direction e_0 is prepended and consumes one column;
/// eigendirections are lifted as [0; t].
/// @throws ConfigError when n_r is out of range.
ParameterProjection covariance_to_projection(const CovarianceMatrix& cov,
                                             Index n_r,
                                             bool include_constant = true);

}  // namespace lpvred
