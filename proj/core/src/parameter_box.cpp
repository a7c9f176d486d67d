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

#include "lpvred/parameter_box.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lpvred/errors.hpp"
#include "lpvred/rng.hpp"

namespace lpvred {

namespace {
constexpr Index kMaxVertexDim = 24;
}

ParameterBox::ParameterBox(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw DimensionError("ParameterBox: lower/upper size mismatch");
  for (Index i = 0; i < lower_.size(); ++i) {
    if (!(upper_(i) > lower_(i))) {
      std::ostringstream msg;
      msg << "ParameterBox: axis " << i << " is degenerate (lower "
          << lower_(i) << ", upper " << upper_(i) << ")";
      throw ValidationError(msg.str());
    }
  }
}

ParameterBox ParameterBox::unit(Index l) {
  return ParameterBox(Vector::Zero(l), Vector::Ones(l));
}

bool ParameterBox::is_unit(double tol) const {
  if (dim() == 0) return true;
  return lower_.cwiseAbs().maxCoeff() <= tol &&
         (upper_.array() - 1.0).abs().maxCoeff() <= tol;
}

void ParameterBox::set_rate_bounds(Vector rate_lower, Vector rate_upper) {
  if (rate_lower.size() != dim() || rate_upper.size() != dim())
    throw DimensionError("ParameterBox: rate bound size mismatch");
  for (Index i = 0; i < dim(); ++i)
    if (rate_upper(i) < rate_lower(i))
      throw ValidationError("ParameterBox: rate_upper < rate_lower");
  rate_lower_ = std::move(rate_lower);
  rate_upper_ = std::move(rate_upper);
}

void ParameterBox::clear_rate_bounds() {
  rate_lower_.reset();
  rate_upper_.reset();
}

const Vector& ParameterBox::rate_lower() const {
  if (!rate_lower_) throw ConfigError("ParameterBox: no rate bounds set");
  return *rate_lower_;
}

const Vector& ParameterBox::rate_upper() const {
  if (!rate_upper_) throw ConfigError("ParameterBox: no rate bounds set");
  return *rate_upper_;
}

bool ParameterBox::contains(const Vector& theta, double tol) const {
  if (theta.size() != dim()) return false;
  for (Index i = 0; i < dim(); ++i)
    if (theta(i) < lower_(i) - tol || theta(i) > upper_(i) + tol) return false;
  return true;
}

void ParameterBox::require_inside(const Vector& theta, double tol) const {
  if (theta.size() != dim())
    throw DimensionError("theta has wrong dimension for this box");
  for (Index i = 0; i < dim(); ++i) {
    if (theta(i) < lower_(i) - tol || theta(i) > upper_(i) + tol) {
      std::ostringstream msg;
      msg << "theta(" << i << ") = " << theta(i) << " outside ["
          << lower_(i) << ", " << upper_(i) << "]";
      throw DomainError(msg.str());
    }
  }
}

std::vector<Vector> ParameterBox::vertices() const {
  const Index l = dim();
  if (l > kMaxVertexDim)
    throw CapacityError(
        "ParameterBox::vertices: more than 2^24 corners; use sample()");
  const std::size_t count = std::size_t{1} << l;
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t v = 0; v < count; ++v) {
    Vector corner(l);
    for (Index i = 0; i < l; ++i) {
      // Axis 0 is the most significant digit: lexicographic order.
      const bool hi = (v >> (l - 1 - i)) & 1u;
      corner(i) = hi ? upper_(i) : lower_(i);
    }
    out.push_back(std::move(corner));
  }
  return out;
}

std::vector<Vector> ParameterBox::sample(int count, std::uint64_t seed) const {
  if (count < 0) throw ConfigError("ParameterBox::sample: negative count");
  const Index l = dim();
  std::vector<Vector> out(count, Vector(l));
  if (count == 0) return out;
  // Latin hypercube: one stratum per point and axis, jittered.
  for (Index i = 0; i < l; ++i) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::vector<int> strata(count);
    std::iota(strata.begin(), strata.end(), 0);
    std::shuffle(strata.begin(), strata.end(), rng);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
      const double u = (strata[k] + jitter(rng)) / count;
      out[k](i) = lower_(i) + u * (upper_(i) - lower_(i));
    }
  }
  return out;
}

}  // namespace lpvred
