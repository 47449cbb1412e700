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
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "qmci/error.h"
#include "qmci/qsim.h"
#include "qmci/rng.h"

namespace qmci {
namespace {

using Matrix = std::vector<std::vector<Complex>>;
constexpr double kTol = 1e-12;
const Complex kI{0.0, 1.0};

// Dense reference: single-qubit matrix u acting on `target` when every
// control bit is set, built directly on basis vectors.
Matrix dense_single(std::size_t n, const std::array<Complex, 4>& u, std::size_t target,
                    const std::vector<std::size_t>& controls = {}) {
  const std::size_t d = std::size_t{1} << n;
  Matrix m(d, std::vector<Complex>(d, 0.0));
  for (std::size_t col = 0; col < d; ++col) {
    bool active = true;
    for (std::size_t c : controls) active = active && ((col >> c) & 1U);
    if (!active) {
      m[col][col] = 1.0;
      continue;
    }
    const std::size_t b = (col >> target) & 1U;
    const std::size_t col0 = col & ~(std::size_t{1} << target);
    const std::size_t col1 = col0 | (std::size_t{1} << target);
    m[col0][col] += u[0 * 2 + b];
    m[col1][col] += u[1 * 2 + b];
  }
  return m;
}

std::vector<Complex> multiply(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size(), 0.0);
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

std::vector<Complex> random_vector(std::size_t n, Rng& rng) {
  std::vector<Complex> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    a = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Circuit random_circuit(std::size_t n, std::size_t gates, Rng& rng) {
  Circuit c(n);
  for (std::size_t g = 0; g < gates; ++g) {
    const auto q = static_cast<Qubit>(uniform_index(rng, n));
    const auto r = static_cast<Qubit>((q + 1 + uniform_index(rng, n - 1)) % n);
    const double angle = 2 * std::numbers::pi * uniform01(rng);
    switch (uniform_index(rng, 8)) {
      case 0: c.add(Gate::h(q)); break;
      case 1: c.add(Gate::t(q)); break;
      case 2: c.add(Gate::ry(q, angle)); break;
      case 3: c.add(Gate::rz(q, angle)); break;
      case 4: c.add(Gate::cnot(q, r)); break;
      case 5: c.add(Gate::controlled_phase(q, r, angle)); break;
      case 6: c.add(Gate::y(q)); break;
      default: c.add(Gate::swap(q, r)); break;
    }
  }
  return c;
}

TEST(QuantumState, StartsInAllZeros) {
  QuantumState s1 = new_state(1);
  ASSERT_EQ(s1.dimension(), 2u);
  EXPECT_EQ(s1.amplitude(0), Complex(1.0));
  EXPECT_EQ(s1.amplitude(1), Complex(0.0));
  QuantumState s2 = new_state(2);
  ASSERT_EQ(s2.dimension(), 4u);
  EXPECT_EQ(s2.amplitude(0), Complex(1.0));
  for (std::uint64_t i = 1; i < 4; ++i) EXPECT_EQ(s2.amplitude(i), Complex(0.0));
}

TEST(QuantumState, RejectsUnsupportedSizes) {
  EXPECT_THROW(new_state(27), CapacityError);
  EXPECT_THROW(new_state(0), CapacityError);
}

TEST(QuantumState, FromAmplitudesNormalizes) {
  QuantumState s = QuantumState::from_amplitudes({3.0, 4.0});
  EXPECT_NEAR(s.probability(0), 0.36, kTol);
  EXPECT_NEAR(s.norm_squared(), 1.0, kTol);
  EXPECT_THROW(QuantumState::from_amplitudes({1.0, 0.0, 0.0}), ShapeError);
}

TEST(Gates, HadamardCreatesEqualSuperposition) {
  QuantumState s = apply_gate(new_state(1), Gate::h(0));
  EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(s.amplitude(1).real(), 1 / std::sqrt(2.0), kTol);
}

TEST(Gates, BellState) {
  QuantumState s = apply_gate(apply_gate(new_state(2), Gate::h(0)), Gate::cnot(0, 1));
  EXPECT_NEAR(probability_of(s, 0), 0.5, kTol);
  EXPECT_NEAR(probability_of(s, 3), 0.5, kTol);
  EXPECT_NEAR(probability_of(s, 1), 0.0, kTol);
  EXPECT_NEAR(probability_of(s, 2), 0.0, kTol);
  EXPECT_THROW(probability_of(s, 4), Error);
}

TEST(Gates, TLeavesZeroUnchanged) {
  QuantumState s = apply_gate(new_state(1), Gate::t(0));
  EXPECT_EQ(s.amplitude(0), Complex(1.0));
  EXPECT_EQ(s.amplitude(1), Complex(0.0));
}

TEST(Gates, MatchDenseReference) {
  Rng rng(42);
  const std::size_t n = 3;
  const double a = 0.7;
  const double s2 = 1 / std::sqrt(2.0);
  const std::complex<double> t = std::polar(1.0, std::numbers::pi / 4);
  struct Case {
    Gate gate;
    std::array<Complex, 4> u;
    std::size_t target;
    std::vector<std::size_t> controls;
  };
  const std::vector<Case> cases = {
      {Gate::h(1), {s2, s2, s2, -s2}, 1, {}},
      {Gate::x(2), {0, 1, 1, 0}, 2, {}},
      {Gate::y(0), {0, -kI, kI, 0}, 0, {}},
      {Gate::z(1), {1, 0, 0, -1}, 1, {}},
      {Gate::t(2), {1, 0, 0, t}, 2, {}},
      {Gate::tdg(2), {1, 0, 0, std::conj(t)}, 2, {}},
      {Gate::ry(0, a), {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)}, 0, {}},
      {Gate::rz(1, a), {std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2)}, 1, {}},
      {Gate::phase(1, a), {1, 0, 0, std::polar(1.0, a)}, 1, {}},
      {Gate::cnot(2, 0), {0, 1, 1, 0}, 0, {2}},
      {Gate::toffoli(0, 2, 1), {0, 1, 1, 0}, 1, {0, 2}},
      {Gate::controlled_ry(1, 2, a),
       {std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2)}, 2, {1}},
      {Gate::controlled_phase(0, 1, a), {1, 0, 0, std::polar(1.0, a)}, 1, {0}},
  };
  for (const Case& c : cases) {
    const std::vector<Complex> v = random_vector(n, rng);
    QuantumState s = QuantumState::from_amplitudes(v);
    s.apply(c.gate);
    const std::vector<Complex> want = multiply(dense_single(n, c.u, c.target, c.controls), v);
    EXPECT_LT(max_diff(s.amplitudes(), want), kTol) << gate_name(c.gate.kind);
  }
}

TEST(Gates, SwapExchangesQubits) {
  QuantumState s = apply_gate(new_state(3), Gate::x(0));
  s.apply(Gate::swap(0, 2));
  EXPECT_NEAR(s.probability(0b100), 1.0, kTol);
}

TEST(Gates, MultiControlledRyFiresOnPattern) {
  // controls (0, 1) must read (1, 0): basis index 0b001.
  const Gate g = Gate::multi_controlled_ry({0, 1}, 0b01, 2, std::numbers::pi);
  for (std::uint64_t input = 0; input < 4; ++input) {
    QuantumState s = QuantumState::from_amplitudes([&] {
      std::vector<Complex> v(8, 0.0);
      v[input] = 1.0;
      return v;
    }());
    s.apply(g);
    EXPECT_NEAR(s.probability_of_one(2), input == 0b01 ? 1.0 : 0.0, kTol) << input;
  }
}

TEST(Gates, PhaseFlipAboutZero) {
  QuantumState s = apply_gate(apply_gate(new_state(2), Gate::h(0)), Gate::h(1));
  s.apply(Gate::phase_flip_about_zero({0, 1}));
  EXPECT_NEAR(s.amplitude(0).real(), -0.5, kTol);
  for (std::uint64_t i = 1; i < 4; ++i) EXPECT_NEAR(s.amplitude(i).real(), 0.5, kTol);
}

TEST(Gates, EveryLocalMatrixIsUnitary) {
  const std::vector<Gate> gates = {Gate::h(0),      Gate::x(0),         Gate::y(0),
                                   Gate::z(0),      Gate::t(0),         Gate::tdg(0),
                                   Gate::ry(0, 1.3), Gate::rz(0, -0.4),  Gate::phase(0, 2.2),
                                   Gate::swap(0, 1), Gate::phase_flip_about_zero({0, 1, 2}),
                                   Gate::global_phase(0.9)};
  for (const Gate& g : gates) {
    const std::vector<Complex> m = g.local_matrix();
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.size()))));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        Complex dot = 0;
        for (std::size_t k = 0; k < d; ++k) dot += std::conj(m[k * d + i]) * m[k * d + j];
        EXPECT_NEAR(std::abs(dot - Complex(i == j ? 1.0 : 0.0)), 0.0, kTol) << gate_name(g.kind);
      }
    }
  }
}

TEST(Gates, CustomRejectsNonUnitary) {
  EXPECT_THROW(Gate::custom({0}, {1, 1, 0, 1}), DomainError);
  EXPECT_NO_THROW(Gate::custom({0}, {0, 1, 1, 0}));
}

TEST(Gates, ShapeErrors) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::cnot(0, 0)), ShapeError);
  EXPECT_THROW(c.add(Gate::h(2)), ShapeError);
  QuantumState s = new_state(2);
  EXPECT_THROW(s.apply(Gate::h(5)), ShapeError);
  EXPECT_THROW(s.apply(Gate::swap(1, 1)), ShapeError);
}

TEST(Circuits, EmptyCircuitIsIdentity) {
  Rng rng(1);
  const QuantumState in = QuantumState::from_amplitudes(random_vector(3, rng));
  const QuantumState out = run_circuit(in, Circuit(3), std::nullopt, rng);
  EXPECT_EQ(max_diff(in.amplitudes(), out.amplitudes()), 0.0);
}

TEST(Circuits, InverseRestoresInput) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const QuantumState in = QuantumState::from_amplitudes(random_vector(4, rng));
    const Circuit c = random_circuit(4, 40, rng);
    QuantumState s = in;
    s.apply(c);
    s.apply(c.inverse());
    EXPECT_LT(max_diff(in.amplitudes(), s.amplitudes()), 1e-9);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Circuits, NormPreservedAfterEveryGate) {
  Rng rng(3);
  QuantumState s = new_state(3);
  const Circuit c = random_circuit(3, 60, rng);
  for (const Gate& g : c.gates()) {
    s.apply(g);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-9);
  }
  double total = 0;
  for (double p : s.probabilities()) total += p;
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Circuits, QubitCountMismatch) {
  Rng rng(0);
  EXPECT_THROW(run_circuit(new_state(2), Circuit(3), std::nullopt, rng), ShapeError);
}

TEST(Circuits, ControlledCircuitActsOnlyWhenControlSet) {
  Rng rng(9);
  const Circuit c = random_circuit(2, 20, rng);
  Circuit wide(3);
  wide.append(c);
  const Circuit cc = wide.controlled(2);
  const std::vector<Complex> v = random_vector(2, rng);

  std::vector<Complex> off(8, 0.0), on(8, 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    off[i] = v[i];
    on[i + 4] = v[i];
  }
  QuantumState s_off = QuantumState::from_amplitudes(off);
  s_off.apply(cc);
  EXPECT_LT(max_diff(s_off.amplitudes(), off), 1e-12);

  QuantumState ref = QuantumState::from_amplitudes(v);
  ref.apply(c);
  QuantumState s_on = QuantumState::from_amplitudes(on);
  s_on.apply(cc);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LT(std::abs(s_on.amplitude(i + 4) - ref.amplitude(i)), 1e-12);
  }
}

TEST(Circuits, ControlledGlobalPhaseIsRelativePhase) {
  Circuit c(2);
  c.add(Gate::global_phase(std::numbers::pi));
  Circuit host(2);
  host.add(Gate::h(1));
  host.append(c.controlled(1));
  QuantumState s = new_state(2);
  s.apply(host);
  EXPECT_NEAR(s.amplitude(0b00).real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(s.amplitude(0b10).real(), -1 / std::sqrt(2.0), kTol);
}

TEST(Qft, SingleQubitIsHadamard) {
  const Circuit c = qft_circuit(1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates()[0].kind, GateKind::kH);
}

TEST(Qft, MatchesDirectDft) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::vector<Complex> v = random_vector(n, rng);
    QuantumState s = QuantumState::from_amplitudes(v);
    s.apply(qft_circuit(n));
    const std::size_t d = v.size();
    for (std::size_t y = 0; y < d; ++y) {
      Complex want = 0;
      for (std::size_t x = 0; x < d; ++x) {
        want += v[x] * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(x * y) /
                                           static_cast<double>(d));
      }
      want /= std::sqrt(static_cast<double>(d));
      EXPECT_LT(std::abs(s.amplitude(y) - want), 1e-10) << "n=" << n << " y=" << y;
    }
  }
}

TEST(Qft, ZeroStateGoesToUniform) {
  QuantumState s = new_state(4);
  s.apply(qft_circuit(4));
  for (double p : s.probabilities()) EXPECT_NEAR(p, 1.0 / 16, kTol);
}

TEST(Qft, InverseUndoesForward) {
  Rng rng(8);
  const std::vector<Complex> v = random_vector(5, rng);
  QuantumState s = QuantumState::from_amplitudes(v);
  s.apply(qft_circuit(5));
  s.apply(qft_circuit(5, true));
  EXPECT_LT(max_diff(s.amplitudes(), v), 1e-9);
}

TEST(Measurement, ZeroStateAlwaysReadsZero) {
  Rng rng(1);
  const Histogram h = measure_all(new_state(1), 100, rng);
  EXPECT_EQ(h.count("0"), 100u);
  EXPECT_EQ(h.shots, 100u);
}

TEST(Measurement, BellFrequencies) {
  QuantumState s = apply_gate(apply_gate(new_state(2), Gate::h(0)), Gate::cnot(0, 1));
  Rng rng(2024);
  const Histogram h = measure_all(s, 10000, rng);
  EXPECT_NEAR(static_cast<double>(h.count("00")) / 10000, 0.5, 0.03);
  EXPECT_NEAR(static_cast<double>(h.count("11")) / 10000, 0.5, 0.03);
  EXPECT_EQ(h.count("01"), 0u);
  EXPECT_EQ(h.count("10"), 0u);
}

TEST(Measurement, SameSeedSameHistogram) {
  QuantumState s = new_state(3);
  for (Qubit q = 0; q < 3; ++q) s.apply(Gate::h(q));
  Rng a(77), b(77);
  EXPECT_EQ(measure_all(s, 500, a).by_bitstring(), measure_all(s, 500, b).by_bitstring());
}

TEST(Measurement, BitstringsPrintMostSignificantFirst) {
  EXPECT_EQ(to_bitstring(1, 3), "001");
  EXPECT_EQ(to_bitstring(6, 3), "110");
  QuantumState s = apply_gate(new_state(3), Gate::x(0));
  Rng rng(0);
  EXPECT_EQ(measure_all(s, 10, rng).count("001"), 10u);
}

TEST(Measurement, MeasureOneOnPlusIsFair) {
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Rng rng(seed);
    ones += measure_one(apply_gate(new_state(1), Gate::h(0)), 0, rng).first;
  }
  EXPECT_NEAR(ones / 2000.0, 0.5, 0.05);
}

TEST(Measurement, MeasureOneCollapses) {
  Rng rng(3);
  auto [bit, post] = measure_one(apply_gate(new_state(1), Gate::x(0)), 0, rng);
  EXPECT_EQ(bit, 1);
  EXPECT_NEAR(post.probability(1), 1.0, kTol);

  const QuantumState bell = apply_gate(apply_gate(new_state(2), Gate::h(0)), Gate::cnot(0, 1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r(seed);
    auto [b, s] = measure_one(bell, 0, r);
    EXPECT_NEAR(s.probability(b == 1 ? 0b11 : 0b00), 1.0, kTol);
  }
  EXPECT_THROW(measure_one(bell, 2, rng), Error);
}

TEST(Noise, ZeroRateMatchesExact) {
  Rng rng(4);
  const Circuit c = random_circuit(3, 30, rng);
  QuantumState exact = new_state(3);
  exact.apply(c);
  const QuantumState noisy = run_circuit(new_state(3), c, NoiseSpec{0.0}, rng);
  EXPECT_LT(max_diff(exact.amplitudes(), noisy.amplitudes()), 1e-12);
}

TEST(Noise, FullRateTrajectoryIsReproducible) {
  Rng gen(6);
  const Circuit c = random_circuit(3, 30, gen);
  Rng a(99), b(99);
  const QuantumState s1 = run_circuit(new_state(3), c, NoiseSpec{1.0}, a);
  const QuantumState s2 = run_circuit(new_state(3), c, NoiseSpec{1.0}, b);
  EXPECT_EQ(max_diff(s1.amplitudes(), s2.amplitudes()), 0.0);
  EXPECT_NEAR(s1.norm_squared(), 1.0, 1e-9);
}

TEST(Noise, SingleGateErrorStatistics) {
  // X on |0>, then with probability 1 a Pauli on the only qubit: X or Y flip
  // it back to |0>, Z leaves it at |1>.
  Circuit c(1);
  c.add(Gate::x(0));
  int zeros = 0;
  const int trials = 6000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    zeros += run_circuit(new_state(1), c, NoiseSpec{1.0}, rng).probability(0) > 0.5;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / trials, 2.0 / 3.0, 0.03);
}

TEST(Noise, RateOutsideUnitIntervalRejected) {
  EXPECT_THROW(NoiseSpec{1.5}.validate(), DomainError);
  EXPECT_THROW(NoiseSpec{-0.1}.validate(), DomainError);
}

TEST(StateIo, WritesOneLinePerBasisState) {
  std::ostringstream out;
  write_state(out, apply_gate(new_state(2), Gate::x(1)));
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[2].substr(0, 5), "2 10 ");
}

}  // namespace
}  // namespace qmci
