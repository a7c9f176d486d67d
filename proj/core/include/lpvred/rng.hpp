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
#include <random>

#include "lpvred/types.hpp"

namespace lpvred {

/// Deterministic engine used everywhere a seed appears in the API.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

/// Derives an independent sub-stream seed (splitmix64 mix of seed and
/// stream index). Stable across platforms and releases.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Matrix with i.i.d. standard normal entries, filled column-major.
Matrix random_gaussian(Index rows, Index cols, Rng& rng);

/// Matrix with orthonormal columns (rows >= cols), drawn from the
/// rotation-invariant distribution. Signs are canonical: the QR factor
/// is normalized so R has a positive diagonal.
Matrix random_orthonormal(Index rows, Index cols, Rng& rng);

}  // namespace lpvred
