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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qmci/dist_encode.h"
#include "qmci/error.h"
#include "qmci/qsim.h"
#include "qmci/rng.h"

namespace qmci {
namespace {

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(std::size_t{1} << n);
  for (double& x : w) x = uniform01(rng);
  return w;
}

TEST(Discretize, UniformIsFlat) {
  const DiscretizedDistribution d = discretize(DistributionSpec::uniform(0, 1), 2, 0, 1);
  for (double p : d.probs) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(Discretize, GaussianSymmetricOnSymmetricRange) {
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(1.5, 0.7), 3, 1.5 - 2.8, 1.5 + 2.8);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(d.probs[x], d.probs[7 - x], 1e-12);
}

TEST(Discretize, GaussianMatchesMidpointDensities) {
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), 3, -4, 4);
  std::vector<double> want(8);
  double total = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double x = -4 + (static_cast<double>(i) + 0.5);
    want[i] = std::exp(-0.5 * x * x);
    total += want[i];
  }
  double sum = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(d.probs[i], want[i] / total, 1e-14);
    sum += d.probs[i];
    EXPECT_GE(d.probs[i], 0.0);
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(d.coordinate(0), -3.5);
}

TEST(Discretize, LognormalUsesLogDensity) {
  const DistributionSpec spec = DistributionSpec::lognormal(0.2, 0.4);
  const auto [lo, hi] = spec.default_range();
  EXPECT_NEAR(lo, std::exp(0.2 - 2.0), 1e-12);
  EXPECT_NEAR(hi, std::exp(0.2 + 2.0), 1e-12);
  const DiscretizedDistribution d = discretize(spec, 4, lo, hi);
  std::vector<double> want(16);
  double total = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    const double x = d.coordinate(i);
    const double z = (std::log(x) - 0.2) / 0.4;
    want[i] = std::exp(-0.5 * z * z) / x;
    total += want[i];
  }
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(d.probs[i], want[i] / total, 1e-13);
}

TEST(Discretize, DefaultRangeIsFiveSigma) {
  const auto [lo, hi] = DistributionSpec::gaussian(2, 0.5).default_range();
  EXPECT_DOUBLE_EQ(lo, -0.5);
  EXPECT_DOUBLE_EQ(hi, 4.5);
}

TEST(Discretize, ExplicitWeightsAreNormalized) {
  const DiscretizedDistribution d = discretize(DistributionSpec::explicit_weights({1, 3}), 1, 0, 1);
  EXPECT_DOUBLE_EQ(d.probs[0], 0.25);
  EXPECT_DOUBLE_EQ(d.probs[1], 0.75);
}

TEST(Discretize, Errors) {
  EXPECT_THROW(discretize(DistributionSpec::gaussian(0, 0), 3, -1, 1), DomainError);
  EXPECT_THROW(discretize(DistributionSpec::gaussian(0, -1), 3, -1, 1), DomainError);
  EXPECT_THROW(discretize(DistributionSpec::uniform(2, 1), 3, 0, 3), DomainError);
  EXPECT_THROW(discretize(DistributionSpec::gaussian(0, 1), 3, 1, -1), DomainError);
  EXPECT_THROW(discretize(DistributionSpec::gaussian(0, 1), 27, -1, 1), CapacityError);
  EXPECT_THROW(discretize(DistributionSpec::explicit_weights({1, 2, 3}), 2, 0, 1), ShapeError);
  EXPECT_THROW(discretize(DistributionSpec::explicit_weights({1, -2}), 1, 0, 1), DomainError);
  EXPECT_THROW(discretize(DistributionSpec::explicit_weights({0, 0}), 1, 0, 1), DomainError);
  EXPECT_THROW(parse_family("cauchy"), ConfigError);
}

TEST(StatePrep, UniformOverFourPoints) {
  const StatePrepCircuit sp = synthesize_state_prep(discretize(DistributionSpec::uniform(0, 1), 2, 0, 1));
  QuantumState s = new_state(2);
  s.apply(sp.circuit);
  for (std::uint64_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(s.amplitude(i).real(), 0.5, 1e-12);
    EXPECT_NEAR(s.amplitude(i).imag(), 0.0, 1e-12);
  }
}

TEST(StatePrep, PointMassGivesBasisState) {
  const StatePrepCircuit sp =
      synthesize_state_prep(discretize(DistributionSpec::explicit_weights({0, 0, 0, 1}), 2, 0, 1));
  QuantumState s = new_state(2);
  s.apply(sp.circuit);
  EXPECT_NEAR(s.probability(3), 1.0, 1e-15);
  EXPECT_LT(verify_state_prep(sp), 1e-15);
}

TEST(StatePrep, AmplitudesAreSquareRootsOfProbabilities) {
  Rng rng(31);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> w = random_weights(n, rng);
      if (trial == 1 && n > 1) w[0] = w[w.size() - 1] = 0.0;
      const DiscretizedDistribution d = discretize(DistributionSpec::explicit_weights(w), n, 0, 1);
      const StatePrepCircuit sp = synthesize_state_prep(d);
      QuantumState s = new_state(n);
      s.apply(sp.circuit);
      for (std::uint64_t i = 0; i < s.dimension(); ++i) {
        EXPECT_NEAR(s.amplitude(i).real(), std::sqrt(d.probs[i]), 1e-9);
        EXPECT_NEAR(s.amplitude(i).imag(), 0.0, 1e-12);
      }
      EXPECT_LT(verify_state_prep(sp), 1e-9);
      EXPECT_LE(sp.circuit.size(), (std::size_t{1} << n) - 1);
      EXPECT_EQ(sp.circuit.oracle_calls(), 1u);
    }
  }
}

TEST(StatePrep, WrongCircuitIsDetected) {
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), 2, -2, 2);
  StatePrepCircuit sp{Circuit(2), d};
  sp.circuit.add(Gate::h(0));
  EXPECT_GT(verify_state_prep(sp), 0.1);
}

TEST(StatePrep, SampledGaussianMatchesProbabilities) {
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), 4, -5, 5);
  QuantumState s = new_state(4);
  s.apply(synthesize_state_prep(d).circuit);
  Rng rng(12);
  const std::size_t shots = 100000;
  const Histogram h = measure_all(s, shots, rng);
  double tv = 0;
  for (std::uint64_t i = 0; i < 16; ++i) {
    tv += std::abs(static_cast<double>(h.count(i)) / shots - d.probs[i]);
  }
  EXPECT_LT(0.5 * tv, 0.02);
}

}  // namespace
}  // namespace qmci
