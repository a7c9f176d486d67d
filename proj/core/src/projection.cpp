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

#include "lpvred/projection.hpp"

#include <set>
#include <sstream>

#include "lpvred/errors.hpp"

namespace lpvred {

ParameterProjection::ParameterProjection(Matrix t, double tol)
    : t_(std::move(t)) {
  if (t_.rows() < 1 || t_.cols() < 1 || t_.cols() > t_.rows())
    throw DimensionError("ParameterProjection: need 1 <= n_r <= l + 1");
  const Matrix gram = t_.transpose() * t_;
  const double dev =
      (gram - Matrix::Identity(t_.cols(), t_.cols())).norm();
  if (dev > tol) {
    std::ostringstream msg;
    msg << "ParameterProjection: columns not orthonormal, |T^T T - I| = "
        << dev;
    throw ValidationError(msg.str());
  }
}

Vector ParameterProjection::project_coefficients(const Vector& c) const {
  if (c.size() != t_.rows())
    throw DimensionError("project_coefficients: coefficient length mismatch");
  return t_ * (t_.transpose() * c);
}

ParameterProjection ParameterProjection::identity(Index l) {
  return ParameterProjection(Matrix::Identity(l + 1, l + 1));
}

ParameterProjection ParameterProjection::constant_only(Index l) {
  Matrix t = Matrix::Zero(l + 1, 1);
  t(0, 0) = 1.0;
  return ParameterProjection(std::move(t));
}

ParameterProjection ParameterProjection::axes(Index l,
                                              const std::vector<Index>& axes) {
  std::set<Index> seen;
  Matrix t = Matrix::Zero(l + 1, static_cast<Index>(axes.size()));
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const Index a = axes[k];
    if (a < 0 || a > l)
      throw DimensionError("ParameterProjection::axes: axis out of range");
    if (!seen.insert(a).second)
      throw ValidationError("ParameterProjection::axes: duplicate axis");
    t(a, static_cast<Index>(k)) = 1.0;
  }
  return ParameterProjection(std::move(t));
}

}  // namespace lpvred
