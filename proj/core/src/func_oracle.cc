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

#include "qmci/func_oracle.h"

#include <algorithm>
#include <cmath>

#include "qmci/error.h"

namespace qmci {

BoundedFunction normalize_function(std::vector<double> raw_values, std::optional<double> f_min,
                                   std::optional<double> f_max) {
  if (raw_values.empty()) throw ShapeError("function has no values");
  for (std::size_t i = 0; i < raw_values.size(); ++i) {
    if (!std::isfinite(raw_values[i])) {
      throw DomainError("function value at index " + std::to_string(i) + " is not finite");
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(raw_values.begin(), raw_values.end());
  BoundedFunction f;
  f.f_min = f_min.value_or(*lo_it);
  f.f_max = f_max.value_or(*hi_it);
  if (!std::isfinite(f.f_min) || !std::isfinite(f.f_max)) throw DomainError("bounds must be finite");
  if (f.f_min > *lo_it || f.f_max < *hi_it) {
    throw DomainError("normalization bounds do not contain the function values");
  }
  f.normalized.assign(raw_values.size(), 0.0);
  if (!f.is_constant()) {
    const double inv = 1.0 / (f.f_max - f.f_min);
    for (std::size_t i = 0; i < raw_values.size(); ++i) {
      f.normalized[i] = std::clamp((raw_values[i] - f.f_min) * inv, 0.0, 1.0);
    }
  }
  f.raw_values = std::move(raw_values);
  return f;
}

Circuit build_table_oracle(const BoundedFunction& f, std::size_t n_qubits) {
  const std::size_t size = std::size_t{1} << n_qubits;
  if (f.size() != size) {
    throw ShapeError("function has " + std::to_string(f.size()) + " values, grid needs " +
                     std::to_string(size));
  }
  Circuit c(n_qubits + 1);
  std::vector<Qubit> controls(n_qubits);
  for (std::size_t j = 0; j < n_qubits; ++j) controls[j] = static_cast<Qubit>(j);
  const auto target = static_cast<Qubit>(n_qubits);
  for (std::size_t x = 0; x < size; ++x) {
    const double angle = 2.0 * std::asin(std::sqrt(f.normalized[x]));
    c.add(Gate::multi_controlled_ry(controls, x, target, angle));
  }
  return c;
}

Circuit build_harmonic_oracle(const HarmonicSpec& h, std::size_t n_qubits) {
  Circuit c(n_qubits + 1);
  const auto target = static_cast<Qubit>(n_qubits);
  c.add(Gate::ry(target, h.phase));
  for (std::size_t j = 0; j < n_qubits; ++j) {
    c.add(Gate::controlled_ry(static_cast<Qubit>(j), target,
                              h.omega * static_cast<double>(std::uint64_t{1} << j)));
  }
  return c;
}

double Integrand::operator()(double x) const {
  switch (kind) {
    case Kind::kIdentity: return x;
    case Kind::kSquare: return x * x;
    case Kind::kRelu: return std::max(0.0, x - threshold);
    case Kind::kIndicator: return (x >= low && x <= high) ? 1.0 : 0.0;
    case Kind::kConstant: return value;
  }
  return 0.0;
}

std::string Integrand::name() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kSquare: return "square";
    case Kind::kRelu: return "relu";
    case Kind::kIndicator: return "indicator";
    case Kind::kConstant: return "constant";
  }
  return "?";
}

std::vector<double> evaluate_on_grid(const Integrand& f, const DiscretizedDistribution& dist) {
  std::vector<double> values(dist.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(dist.coordinate(i));
  return values;
}

}  // namespace qmci
