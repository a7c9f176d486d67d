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
#include <vector>

#include "lpvred/types.hpp"

namespace lpvred {

/// Axis-aligned parameter box, optionally with rate bounds.
///
/// Scheduling models in this library are normalized, so in practice the
/// box is the unit cube [0,1]^l; the class itself supports general
/// finite bounds because it also describes boxes before normalization.
class ParameterBox {
 public:
  /// @throws DimensionError, ValidationError if upper <= lower on any axis.
  ParameterBox(Vector lower, Vector upper);

  static ParameterBox unit(Index l);

  Index dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector center() const { return 0.5 * (lower_ + upper_); }
  Vector width() const { return upper_ - lower_; }

  bool is_unit(double tol = 0.0) const;

  /// @throws DimensionError, ValidationError if rate_upper < rate_lower.
  void set_rate_bounds(Vector rate_lower, Vector rate_upper);
  void clear_rate_bounds();
  bool has_rate_bounds() const { return rate_lower_.has_value(); }
  const Vector& rate_lower() const;
  const Vector& rate_upper() const;

  /// True when theta lies inside the box up to tol per axis.
  bool contains(const Vector& theta, double tol = 1e-9) const;

  /// Throws DomainError naming the first violating coordinate.
  void require_inside(const Vector& theta, double tol = 1e-9) const;

  /// All 2^l corners in lexicographic order: the first axis is the most
  /// significant digit, so for l = 2 the order is (lo,lo), (lo,hi),
  /// (hi,lo), (hi,hi). For l = 0 returns one empty vertex.
  /// @throws CapacityError for l > 24 (use sample() instead).
  std::vector<Vector> vertices() const;

  /// Latin hypercube sample of the box interior, deterministic per seed.
  std::vector<Vector> sample(int count, std::uint64_t seed) const;

 private:
  Vector lower_;
  Vector upper_;
  std::optional<Vector> rate_lower_;
  std::optional<Vector> rate_upper_;
};

}  // namespace lpvred
