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

// Discretization of parametric densities onto a 2^n grid and synthesis of the
// state-preparation circuit |0...0> -> sum_x sqrt(p(x)) |x>.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "qmci/qsim.h"

namespace qmci {

enum class Family { kGaussian, kLognormal, kUniform, kExplicit };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);  // ConfigError on unknown names

/// A distribution family with its parameters. Gaussian and lognormal use
/// (mu, sigma); uniform uses [low, high]; explicit uses `weights`, one per
/// grid point.
struct DistributionSpec {
  Family family = Family::kGaussian;
  double mu = 0.0;
  double sigma = 1.0;
  double low = 0.0;
  double high = 1.0;
  std::vector<double> weights;

  static DistributionSpec gaussian(double mu, double sigma);
  static DistributionSpec lognormal(double mu, double sigma);
  static DistributionSpec uniform(double low, double high);
  static DistributionSpec explicit_weights(std::vector<double> weights);

  void validate() const;

  /// Continuous density; not defined for kExplicit.
  double density(double x) const;

  /// Default truncation window: mu +- 5 sigma (in log space for lognormal),
  /// the support for uniform, [0, 1] for explicit weights.
  std::pair<double, double> default_range() const;
};

struct DiscretizedDistribution {
  std::size_t n_qubits = 0;
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::vector<double> probs;
  Family source = Family::kExplicit;

  std::size_t size() const { return probs.size(); }
  double spacing() const { return (x_hi - x_lo) / static_cast<double>(probs.size()); }
  /// Physical coordinate of grid point `index` (cell midpoint).
  double coordinate(std::size_t index) const {
    return x_lo + (static_cast<double>(index) + 0.5) * spacing();
  }
  std::vector<double> coordinates() const;
};

/// probs[x] proportional to the density at the midpoint of cell x, then
/// renormalized. DomainError for invalid parameters, x_lo >= x_hi, or zero
/// total mass on the grid.
DiscretizedDistribution discretize(const DistributionSpec& spec, std::size_t n_qubits,
                                   double x_lo, double x_hi);

struct StatePrepCircuit {
  Circuit circuit;
  DiscretizedDistribution dist;
};

/// Binary bisection of probability mass: the node covering prefix `b` on the
/// high qubits rotates the next qubit by 2 acos(sqrt(left/node)), controlled
/// on that prefix. Zero-angle nodes are omitted, so the gate count is at most
/// 2^n - 1. The circuit is tagged as one oracle call.
StatePrepCircuit synthesize_state_prep(const DiscretizedDistribution& dist);

/// max_x |amplitude_x - sqrt(p(x))| after running the circuit on |0...0>.
double verify_state_prep(const StatePrepCircuit& sp);

}  // namespace qmci
