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

#include "lpvred/model.hpp"
#include "lpvred/types.hpp"

namespace lpvred {

/// Seeded random affine model on the unit box. The constant block is
/// Hurwitz by construction (symmetric part below -1.5 I) and each
/// parameter block is symmetric negative definite, so every point of
/// the box is stable, not merely the sampled ones. Parameter blocks
/// carry geometrically decaying scales so the directions have a
/// natural importance ordering.
struct RandomModelOptions {
  Index n = 45;
  Index l = 5;
  Index m = 2;
  Index q = 2;
  /// Scale ratio between consecutive parameter blocks.
  double decay = 0.5;
  /// Symmetric rate bound written to the box (normalized units);
  /// non-positive leaves the box without rate bounds.
  double rate_bound = 0.5;
};

AffineLpvModel generate_random_model(std::uint64_t seed,
                                     const RandomModelOptions& options = {});

/// First-principles RC thermal network: a chain of metal blocks, each
/// a chain of lumped nodes with seeded conduction jitter, grounded to
/// ambient at the two chain ends. Parameter theta_i scales the inverse
/// heat capacity of block i,
///
///   x' = -(E_0 + sum theta_i E_i)(L + G_amb) x
///        + (E_0 + sum theta_i E_i) Btilde u,   y = C_0 x,
///
/// which keeps every matrix affine in theta. E(theta) is diagonal
/// positive and L + G_amb is a grounded-Laplacian, hence symmetric
/// positive definite; A(theta) is Hurwitz on the whole box. Inputs are
/// heat powers at two block centers, outputs node temperatures at two
/// other block centers, D = 0.
struct ThermalModelOptions {
  Index blocks = 5;
  Index nodes_per_block = 9;
  double intra_conductance = 1.0;
  double inter_conductance = 0.25;
  /// Leak to ambient on the first and last chain node.
  double ambient_conductance = 0.2;
  /// Inverse heat capacity grows by this factor from theta_i = 0 to 1.
  double capacity_span = 0.75;
  /// Relative seeded perturbation of conductances and capacities.
  double jitter = 0.1;
  double rate_bound = 0.02;
};

AffineLpvModel generate_thermal_model(std::uint64_t seed,
                                      const ThermalModelOptions& options = {});

}  // namespace lpvred
