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

#include "lpvred/errors.hpp"
#include "lpvred/gramians.hpp"
#include "lpvred/model.hpp"
#include "lpvred/projection.hpp"
#include "lpvred/sensitivity.hpp"
#include "lpvred/simulate.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// JSON files. Matrices are arrays of row arrays; affine families are
/// arrays of l+1 matrices, constant block first. Models store the
/// normalized blocks, the unit box with its rate bounds, and the
/// original box as a label. All throw IoError on unreadable files or
/// schema violations.

void save_model(const AffineLpvModel& model, const std::string& path);
AffineLpvModel load_model(const std::string& path);

void save_gramian(const AffineGramian& gramian, const std::string& path);
AffineGramian load_gramian(const std::string& path);

/// Projection plus the provenance the reduce/sweep tools track.
struct ProjectionFile {
  ParameterProjection projection{Matrix::Identity(1, 1)};
  std::string method;
  double objective = 0.0;
  std::uint64_t seed = 0;
};

void save_projection(const ProjectionFile& file, const std::string& path);
ProjectionFile load_projection(const std::string& path);

void save_covariance(const CovarianceMatrix& cov, const std::string& path);
CovarianceMatrix load_covariance(const std::string& path);

/// Simulation job consumed by the command line: the protocol plus the
/// model to run, and optionally a reduced model whose output error
/// columns are appended to the CSV.
struct SimulationJob {
  std::string model_path;
  std::string reduced_path;  ///< empty when absent
  SimulationSpec spec;
};

SimulationJob load_simulation_job(const std::string& path);

/// Columns t,u1..um,y1..yq and, when e is given, e1..eq.
/// Full round-trip precision (17 significant digits).
void write_time_series_csv(const std::string& path, const Vector& t,
                           const Matrix& u, const Matrix& y,
                           const Matrix* e = nullptr);

}  // namespace lpvred
