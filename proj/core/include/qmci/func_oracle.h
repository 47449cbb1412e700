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

// Function-encoding circuits: the appended qubit ends in
//   sqrt(1 - g(x)) |0> + sqrt(g(x)) |1>
// on branch |x>, so its probability of reading 1 is sum_x p(x) g(x).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmci/dist_encode.h"
#include "qmci/qsim.h"

namespace qmci {

/// Integrand values on the grid with their affine map into [0, 1].
struct BoundedFunction {
  std::vector<double> raw_values;
  double f_min = 0.0;
  double f_max = 0.0;
  std::vector<double> normalized;

  std::size_t size() const { return raw_values.size(); }
  bool is_constant() const { return !(f_max > f_min); }
  double scale() const { return f_max - f_min; }

  /// E[f] from E[normalized f].
  double denormalize(double normalized_expectation) const {
    return f_min + scale() * normalized_expectation;
  }
};

/// Bounds default to the observed min and max. A constant vector normalizes
/// to all zeros. DomainError for non-finite values or explicit bounds that
/// do not contain the data.
BoundedFunction normalize_function(std::vector<double> raw_values,
                                   std::optional<double> f_min = std::nullopt,
                                   std::optional<double> f_max = std::nullopt);

/// One multi-controlled Ry(2 asin sqrt(g(x))) per grid point onto qubit n.
/// Always emits exactly 2^n rotations, zero angles included.
Circuit build_table_oracle(const BoundedFunction& f, std::size_t n_qubits);

struct HarmonicSpec {
  double omega = 0.0;  // radians per grid index
  double phase = 0.0;  // radians
};

/// Ry(phase) on the appended qubit followed by Ry(omega 2^j) controlled on
/// input qubit j: total angle phase + omega x, exactly n + 1 rotations.
Circuit build_harmonic_oracle(const HarmonicSpec& h, std::size_t n_qubits);

/// Named integrands evaluated at physical coordinates.
struct Integrand {
  enum class Kind { kIdentity, kSquare, kRelu, kIndicator, kConstant };

  Kind kind = Kind::kIdentity;
  double threshold = 0.0;  // relu: max(0, x - threshold)
  double low = 0.0;        // indicator of [low, high]
  double high = 0.0;
  double value = 0.0;  // constant

  static Integrand identity() { return {}; }
  static Integrand square() { return {Kind::kSquare}; }
  static Integrand relu(double threshold) { return {Kind::kRelu, threshold}; }
  static Integrand indicator(double low, double high) {
    return {Kind::kIndicator, 0.0, low, high};
  }
  static Integrand constant(double value) { return {Kind::kConstant, 0.0, 0.0, 0.0, value}; }

  double operator()(double x) const;
  std::string name() const;
};

/// f evaluated at every grid midpoint of `dist`.
std::vector<double> evaluate_on_grid(const Integrand& f, const DiscretizedDistribution& dist);

}  // namespace qmci
