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

#include "lpvred/types.hpp"

namespace lpvred {

/// One semidefinite constraint block over shared unknown symmetric
/// matrices P_0 .. P_{B-1} (all s x s):
///
///   Z_b = K + sum_k [ lyap_coeff(k) * (A P_k + P_k A^T)
///                     + diag_coeff(k) * P_k ]  >= 0.
///
/// A may be empty when lyap_coeff is zero. Margins (shifts of K) are
/// the caller's responsibility; the solver certifies Z_b >= 0 strictly.
struct SdpBlock {
  Matrix K;
  Matrix A;
  Vector lyap_coeff;
  Vector diag_coeff;
  std::string label;
};

struct SdpProblem {
  Index unknown_dim = 0;    // s: side length of each unknown block
  Index unknown_count = 0;  // B
  std::vector<SdpBlock> blocks;
  /// Per-unknown weights of a linear trace objective
  /// minimize sum_k trace_weight(k) * tr(P_k); empty => feasibility only.
  Vector trace_weight;
};

enum class SdpStatus {
  Optimal,           // trace objective minimized to tolerance
  Feasible,          // strictly feasible point certified
  Infeasible,        // max-margin problem converged to a negative margin
  IterationLimit,    // undecided within the iteration budget
  NumericalTrouble,  // linear algebra breakdown
};

const char* to_string(SdpStatus status);

struct SdpOptions {
  int max_iterations = 100;
  /// Relative complementarity-gap tolerance for optimality.
  double gap_tol = 1e-8;
  /// Phase 1 stops as soon as the certified margin exceeds this value.
  double feasibility_target = 1e-6;
  /// Upper bound on the phase-1 margin variable (keeps it bounded).
  double margin_cap = 1e3;
  bool verbose = false;
};

struct SdpResult {
  SdpStatus status = SdpStatus::NumericalTrouble;
  std::vector<Matrix> unknowns;
  /// Smallest eigenvalue over all constraint blocks at the returned
  /// point, in the caller's (unscaled) units.
  double certified_margin = 0.0;
  double objective = 0.0;
  int iterations = 0;
  std::string message;
};

/// Primal-dual path-following solver specialized to the block structure
/// above (HKM direction, Mehrotra predictor-corrector, dual-feasible
/// iterates). Phase 1 maximizes a uniform margin t added to every
/// block; when a trace objective is present, phase 2 minimizes it from
/// the phase-1 interior point.
SdpResult solve_structured_sdp(const SdpProblem& problem,
                               const SdpOptions& options = {});

}  // namespace lpvred
