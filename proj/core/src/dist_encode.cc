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

#include "qmci/dist_encode.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmci/error.h"

namespace qmci {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kGaussian: return "gaussian";
    case Family::kLognormal: return "lognormal";
    case Family::kUniform: return "uniform";
    case Family::kExplicit: return "explicit";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "gaussian") return Family::kGaussian;
  if (name == "lognormal") return Family::kLognormal;
  if (name == "uniform") return Family::kUniform;
  if (name == "explicit") return Family::kExplicit;
  throw ConfigError("unknown distribution family '" + std::string(name) + "'");
}

DistributionSpec DistributionSpec::gaussian(double mu, double sigma) {
  DistributionSpec s;
  s.family = Family::kGaussian;
  s.mu = mu;
  s.sigma = sigma;
  return s;
}

DistributionSpec DistributionSpec::lognormal(double mu, double sigma) {
  DistributionSpec s = gaussian(mu, sigma);
  s.family = Family::kLognormal;
  return s;
}

DistributionSpec DistributionSpec::uniform(double low, double high) {
  DistributionSpec s;
  s.family = Family::kUniform;
  s.low = low;
  s.high = high;
  return s;
}

DistributionSpec DistributionSpec::explicit_weights(std::vector<double> weights) {
  DistributionSpec s;
  s.family = Family::kExplicit;
  s.weights = std::move(weights);
  return s;
}

void DistributionSpec::validate() const {
  switch (family) {
    case Family::kGaussian:
    case Family::kLognormal:
      if (!std::isfinite(mu) || !(sigma > 0) || !std::isfinite(sigma)) {
        throw DomainError(std::string(family_name(family)) + " requires finite mu and sigma > 0");
      }
      break;
    case Family::kUniform:
      if (!std::isfinite(low) || !std::isfinite(high) || !(low < high)) {
        throw DomainError("uniform requires finite low < high");
      }
      break;
    case Family::kExplicit:
      if (weights.empty()) throw DomainError("explicit distribution has no weights");
      for (double w : weights) {
        if (!std::isfinite(w) || w < 0) throw DomainError("explicit weights must be finite and >= 0");
      }
      break;
  }
}

double DistributionSpec::density(double x) const {
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  switch (family) {
    case Family::kGaussian: {
      const double z = (x - mu) / sigma;
      return inv_sqrt_2pi / sigma * std::exp(-0.5 * z * z);
    }
    case Family::kLognormal: {
      if (x <= 0) return 0.0;
      const double z = (std::log(x) - mu) / sigma;
      return inv_sqrt_2pi / (sigma * x) * std::exp(-0.5 * z * z);
    }
    case Family::kUniform:
      return (x >= low && x <= high) ? 1.0 / (high - low) : 0.0;
    case Family::kExplicit:
      break;
  }
  throw DomainError("explicit distributions have no continuous density");
}

std::pair<double, double> DistributionSpec::default_range() const {
  validate();
  switch (family) {
    case Family::kGaussian: return {mu - 5 * sigma, mu + 5 * sigma};
    case Family::kLognormal: return {std::exp(mu - 5 * sigma), std::exp(mu + 5 * sigma)};
    case Family::kUniform: return {low, high};
    case Family::kExplicit: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

std::vector<double> DiscretizedDistribution::coordinates() const {
  std::vector<double> xs(probs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = coordinate(i);
  return xs;
}

DiscretizedDistribution discretize(const DistributionSpec& spec, std::size_t n_qubits, double x_lo,
                                   double x_hi) {
  spec.validate();
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("grid of 2^" + std::to_string(n_qubits) + " points is not supported");
  }
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_lo < x_hi)) {
    throw DomainError("discretization range requires x_lo < x_hi");
  }
  DiscretizedDistribution d;
  d.n_qubits = n_qubits;
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  d.source = spec.family;
  const std::size_t size = std::size_t{1} << n_qubits;
  if (spec.family == Family::kExplicit) {
    if (spec.weights.size() != size) {
      throw ShapeError("explicit weights have length " + std::to_string(spec.weights.size()) +
                       ", grid needs " + std::to_string(size));
    }
    d.probs = spec.weights;
  } else {
    d.probs.resize(size);
    for (std::size_t i = 0; i < size; ++i) d.probs[i] = spec.density(d.coordinate(i));
  }
  double total = 0;
  for (double p : d.probs) total += p;
  if (!(total > 0) || !std::isfinite(total)) {
    throw DomainError("distribution has no mass on [" + std::to_string(x_lo) + ", " +
                      std::to_string(x_hi) + "]");
  }
  for (double& p : d.probs) p /= total;
  return d;
}

StatePrepCircuit synthesize_state_prep(const DiscretizedDistribution& dist) {
  const std::size_t n = dist.n_qubits;
  if (dist.probs.size() != (std::size_t{1} << n)) throw ShapeError("distribution size is not 2^n");

  // mass[level][prefix]: total probability of indices whose top `level` bits equal prefix.
  std::vector<std::vector<double>> mass(n + 1);
  mass[n] = dist.probs;
  for (std::size_t level = n; level-- > 0;) {
    mass[level].resize(std::size_t{1} << level);
    for (std::size_t b = 0; b < mass[level].size(); ++b) {
      mass[level][b] = mass[level + 1][2 * b] + mass[level + 1][2 * b + 1];
    }
  }

  StatePrepCircuit sp{Circuit(n), dist};
  for (std::size_t level = 0; level < n; ++level) {
    const auto target = static_cast<Qubit>(n - 1 - level);
    std::vector<Qubit> controls;
    for (std::size_t j = 0; j < level; ++j) controls.push_back(static_cast<Qubit>(n - 1 - j));
    for (std::size_t prefix = 0; prefix < mass[level].size(); ++prefix) {
      const double node = mass[level][prefix];
      if (!(node > 0)) continue;
      const double left = mass[level + 1][2 * prefix];
      const double ratio = std::clamp(left / node, 0.0, 1.0);
      const double angle = 2.0 * std::acos(std::sqrt(ratio));
      if (angle == 0.0) continue;
      // controls[j] is qubit n-1-j, which holds bit (level-1-j) of the prefix.
      std::uint64_t pattern = 0;
      for (std::size_t j = 0; j < level; ++j) {
        if ((prefix >> (level - 1 - j)) & 1) pattern |= std::uint64_t{1} << j;
      }
      if (level == 0) {
        sp.circuit.add(Gate::ry(target, angle));
      } else {
        sp.circuit.add(Gate::multi_controlled_ry(controls, pattern, target, angle));
      }
    }
  }
  sp.circuit.set_oracle_calls(1);
  return sp;
}

double verify_state_prep(const StatePrepCircuit& sp) {
  QuantumState state(sp.circuit.n_qubits());
  state.apply(sp.circuit);
  if (state.dimension() != sp.dist.probs.size()) throw ShapeError("circuit/distribution size mismatch");
  double worst = 0;
  for (std::size_t x = 0; x < state.dimension(); ++x) {
    worst = std::max(worst, std::abs(state.amplitude(x) - Complex(std::sqrt(sp.dist.probs[x]), 0.0)));
  }
  return worst;
}

}  // namespace qmci
