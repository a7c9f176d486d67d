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

#include "lpvred/generators.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "lpvred/errors.hpp"
#include "lpvred/parameter_box.hpp"
#include "lpvred/rng.hpp"

namespace lpvred {

namespace {

double jittered(double value, double jitter, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return value * (1.0 + jitter * u(rng));
}

void set_symmetric_rates(ParameterBox& box, double bound, Index l) {
  if (bound > 0.0) {
    box.set_rate_bounds(Vector::Constant(l, -bound),
                        Vector::Constant(l, bound));
  }
}

}  // namespace

AffineLpvModel generate_random_model(std::uint64_t seed,
                                     const RandomModelOptions& options) {
  const Index n = options.n;
  const Index l = options.l;
  const Index m = options.m;
  const Index q = options.q;
  if (n < 1 || l < 0 || m < 1 || q < 1) {
    throw ConfigError("model dimensions must be positive");
  }
  if (!(options.decay > 0.0)) {
    throw ConfigError("decay must be positive");
  }
  Rng rng = make_rng(seed);

  std::vector<Matrix> a, b, c, d;
  a.reserve(l + 1);

  // Hurwitz constant block: symmetric part at or below -1.5 I, the
  // skew part cannot raise the spectral abscissa.
  {
    const Matrix g = random_gaussian(n, n, rng);
    const Matrix s = random_gaussian(n, n, rng);
    Matrix a0 = -(g * g.transpose()) / static_cast<double>(n);
    a0.diagonal().array() -= 1.5;
    a0 += 0.5 / std::sqrt(static_cast<double>(n)) * (s - s.transpose());
    a.push_back(std::move(a0));
  }
  double scale = 1.0;
  for (Index i = 0; i < l; ++i) {
    const Matrix g = random_gaussian(n, n, rng);
    Matrix ai = -(g * g.transpose()) / static_cast<double>(n);
    ai.diagonal().array() -= 0.1;
    a.push_back(scale * ai);
    scale *= options.decay;
  }

  b.push_back(random_gaussian(n, m, rng));
  c.push_back(random_gaussian(q, n, rng));
  d.push_back(0.1 * random_gaussian(q, m, rng));
  scale = 1.0;
  for (Index i = 0; i < l; ++i) {
    b.push_back(0.6 * scale * random_gaussian(n, m, rng));
    c.push_back(0.6 * scale * random_gaussian(q, n, rng));
    d.push_back(0.05 * scale * random_gaussian(q, m, rng));
    scale *= options.decay;
  }

  ParameterBox box(Vector::Zero(l), Vector::Ones(l));
  set_symmetric_rates(box, options.rate_bound, l);
  return AffineLpvModel(std::move(a), std::move(b), std::move(c),
                        std::move(d), std::move(box));
}

AffineLpvModel generate_thermal_model(std::uint64_t seed,
                                      const ThermalModelOptions& options) {
  const Index blocks = options.blocks;
  const Index npb = options.nodes_per_block;
  if (blocks < 1 || npb < 1) {
    throw ConfigError("thermal model needs at least one block and node");
  }
  if (options.intra_conductance <= 0.0 || options.inter_conductance <= 0.0 ||
      options.ambient_conductance <= 0.0) {
    throw ConfigError("conductances must be positive");
  }
  if (options.capacity_span <= 0.0) {
    throw ConfigError("capacity span must be positive");
  }
  const Index n = blocks * npb;
  const Index l = blocks;
  Rng rng = make_rng(seed);

  // grounded conduction Laplacian K = L + G_amb over the node chain
  Matrix k = Matrix::Zero(n, n);
  auto couple = [&k](Index u, Index v, double g) {
    k(u, u) += g;
    k(v, v) += g;
    k(u, v) -= g;
    k(v, u) -= g;
  };
  for (Index v = 0; v + 1 < n; ++v) {
    const bool inter = (v + 1) % npb == 0;
    const double g = inter ? options.inter_conductance
                           : options.intra_conductance;
    couple(v, v + 1, jittered(g, options.jitter, rng));
  }
  k(0, 0) += jittered(options.ambient_conductance, options.jitter, rng);
  k(n - 1, n - 1) += jittered(options.ambient_conductance, options.jitter, rng);

  // inverse heat capacities, affine in theta per block
  Vector e0(n), espan(n);
  for (Index blk = 0; blk < blocks; ++blk) {
    const double base = jittered(1.0, 2.0 * options.jitter, rng);
    for (Index v = 0; v < npb; ++v) {
      e0(blk * npb + v) = base;
      espan(blk * npb + v) = options.capacity_span * base;
    }
  }

  // heat inputs at two block centers, temperature outputs at two others
  const Index m = 2;
  const Index q = 2;
  const auto center = [npb](Index blk) { return blk * npb + npb / 2; };
  const Index in0 = center(0);
  const Index in1 = center(blocks / 2);
  const Index out0 = center(std::min<Index>(1, blocks - 1));
  const Index out1 = center(blocks - 1);
  Matrix btilde = Matrix::Zero(n, m);
  btilde(in0, 0) = 1.0;
  btilde(in1, 1) += 1.0;

  std::vector<Matrix> a, b, c, d;
  a.push_back((-e0).asDiagonal() * k);
  b.push_back(e0.asDiagonal() * btilde);
  for (Index blk = 0; blk < blocks; ++blk) {
    Vector ei = Vector::Zero(n);
    ei.segment(blk * npb, npb) = espan.segment(blk * npb, npb);
    a.push_back((-ei).asDiagonal() * k);
    b.push_back(ei.asDiagonal() * btilde);
  }
  Matrix c0 = Matrix::Zero(q, n);
  c0(0, out0) = 1.0;
  c0(1, out1) += 1.0;
  for (Index blk = 0; blk <= blocks; ++blk) {
    c.push_back(blk == 0 ? c0 : Matrix::Zero(q, n));
    d.push_back(Matrix::Zero(q, m));
  }

  ParameterBox box(Vector::Zero(l), Vector::Ones(l));
  set_symmetric_rates(box, options.rate_bound, l);
  return AffineLpvModel(std::move(a), std::move(b), std::move(c),
                        std::move(d), std::move(box));
}

}  // namespace lpvred
