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
#include <limits>
#include <string>
#include <vector>

#include "lpvred/gramians.hpp"
#include "lpvred/hankel_reduce.hpp"
#include "lpvred/model.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/sensitivity.hpp"
#include "lpvred/simulate.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// One (method, order) cell of a reduction sweep. order counts the
/// parameter directions kept, so the reduced chart has order + 1
/// columns and order = 0 is the constant-only model.
struct SweepCell {
  ReductionMethod method = ReductionMethod::Hankel;
  Index order = 0;
  ParameterProjection projection{Matrix::Identity(1, 1)};
  /// Hankel objective of the returned chart, for any method, when the
  /// objective was assembled; NaN otherwise.
  double objective = std::numeric_limits<double>::quiet_NaN();
  /// Winning pool entry for Hankel cells.
  std::string start_label;
  RelativePinfError error;
  /// Simulation trace file name relative to the output directory.
  std::string csv;
  /// Non-empty when the cell failed; the other fields are then unset.
  std::string failure;
  double seconds = 0.0;
};

struct SweepOptions {
  std::vector<ReductionMethod> methods{
      ReductionMethod::Hankel, ReductionMethod::Tscm, ReductionMethod::Scm,
      ReductionMethod::Subsys};
  /// Reduction orders; empty means 0..l. Sorted and deduplicated.
  std::vector<Index> orders;
  /// Seeds the simulated theta realization.
  std::uint64_t seed = 42;
  /// Evaluation set for the relative error and the Hankel objective.
  EvalSet eval;
  GramianSynthesisOptions gramian;
  HankelReduceOptions hankel;
  TscmOptions tscm;
  ScmOptions scm;
  /// Simulation protocol; empty segments select a unit step over the
  /// first 40% of the horizon, and t_final <= 0 selects five times
  /// the slowest time constant at the simulated theta.
  SimulationSpec sim;
  /// Directory for trace CSVs; empty disables simulation output.
  std::string out_dir;
  /// Worker threads for the per-cell evaluations; 0 reads
  /// LPVRED_WORKERS and falls back to 1.
  int workers = 0;
};

struct SweepReport {
  struct Dims {
    Index n = 0;
    Index m = 0;
    Index q = 0;
    Index l = 0;
  } dims;
  TimeKind time = TimeKind::Continuous;
  double model_step = 0.0;
  std::uint64_t seed = 42;
  EvalSet eval;
  std::vector<ReductionMethod> methods;
  std::vector<Index> orders;

  /// Resolved protocol: theta filled in, step pinned so full and
  /// reduced trajectories share one grid.
  SimulationSpec sim;
  bool simulated = false;
  std::string full_csv;
  std::string error_csv;

  /// p_inf,inf of the full model: the shared error denominator.
  ParametricNorm full_norm;

  /// Method-major, order-minor; methods.size() * orders.size() cells.
  std::vector<SweepCell> cells;

  bool has_gramians = false;
  AffineGramian gram_p;
  AffineGramian gram_q;
  std::string gramian_failure;
  bool has_tscm = false;
  CovarianceMatrix tscm_cov;
  std::string tscm_failure;
  bool has_scm = false;
  CovarianceMatrix scm_cov;
  std::string scm_failure;
  bool has_ranking = false;
  SubsystemRanking ranking;
  std::string ranking_failure;

  double gramian_seconds = 0.0;
  double tscm_seconds = 0.0;
  double scm_seconds = 0.0;
  double ranking_seconds = 0.0;
  double norm_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Worker-count resolution: a positive request wins, then the
/// LPVRED_WORKERS environment variable, then 1.
int resolve_workers(int requested);

/// Full method-by-order reduction study. Projections are computed per
/// method (nested Hankel order sweep with covariance warm starts when
/// those methods ran; ranked covariance charts; subsystem axis
/// selection), every cell is scored with the relative p_inf,inf error
/// on the shared evaluation set, and when out_dir is set each cell's
/// reduced simulation and error trace are written as CSV. Cell
/// failures are recorded in the cell and the sweep continues.
SweepReport run_reduction_sweep(const AffineLpvModel& model,
                                const SweepOptions& options = {});

/// Report JSON. Every value is reproducible from (model, options,
/// seed) except wall-clock times, which live under "timings" keys so
/// comparisons can strip them.
void write_report(const SweepReport& report, const std::string& path);

}  // namespace lpvred
