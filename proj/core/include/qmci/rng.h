// Copyright 2026 The QMCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qmci {

/// The single generator type threaded through every stochastic routine.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, so streams are
/// identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(bound)) % bound;
}

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent sub-stream, e.g. one trial of one convergence cell.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a = 0,
                          std::uint64_t b = 0);

}  // namespace qmci
