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

#include "qmci/qsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qmci/error.h"

namespace qmci {
namespace {

constexpr Complex kI{0.0, 1.0};

inline std::uint64_t bit(Qubit q) { return std::uint64_t{1} << q; }

// Index of the i-th basis state whose bit `t` is clear.
inline std::uint64_t insert_zero(std::uint64_t i, Qubit t) {
  const std::uint64_t low = i & (bit(t) - 1);
  return ((i >> t) << (t + 1)) | low;
}

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  bool fires(std::uint64_t index) const { return (index & mask) == value; }
};

ControlMask control_mask(const Gate& gate) {
  ControlMask c;
  for (std::size_t i = 0; i < gate.controls.size(); ++i) {
    c.mask |= bit(gate.controls[i]);
    if (((gate.anti_controls >> i) & 1) == 0) c.value |= bit(gate.controls[i]);
  }
  return c;
}

std::size_t expected_targets(GateKind kind) {
  switch (kind) {
    case GateKind::kSwap:
      return 2;
    case GateKind::kGlobalPhase:
      return 0;
    case GateKind::kPhaseFlipAboutZero:
    case GateKind::kCustom:
      return static_cast<std::size_t>(-1);  // variable
    default:
      return 1;
  }
}

bool is_diagonal(GateKind kind) {
  switch (kind) {
    case GateKind::kZ:
    case GateKind::kT:
    case GateKind::kTdg:
    case GateKind::kRz:
    case GateKind::kPhase:
      return true;
    default:
      return false;
  }
}

void validate_structure(const Gate& gate) {
  const std::size_t want = expected_targets(gate.kind);
  if (want != static_cast<std::size_t>(-1) && gate.targets.size() != want) {
    throw ShapeError(std::string(gate_name(gate.kind)) + " expects " + std::to_string(want) +
                     " target(s), got " + std::to_string(gate.targets.size()));
  }
  if (gate.kind == GateKind::kPhaseFlipAboutZero && gate.targets.empty()) {
    throw ShapeError("PhaseFlipAboutZero needs at least one target");
  }
  if (gate.kind == GateKind::kCustom) {
    const std::size_t k = gate.targets.size();
    if (k < 1 || k > 3) throw ShapeError("custom gates act on 1 to 3 qubits");
    const std::size_t d = std::size_t{1} << k;
    if (gate.matrix.size() != d * d) throw ShapeError("custom gate matrix has the wrong size");
  }
  if (gate.controls.size() > 63) throw ShapeError("too many controls");
  std::vector<Qubit> all = gate.targets;
  all.insert(all.end(), gate.controls.begin(), gate.controls.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ShapeError(std::string(gate_name(gate.kind)) + ": repeated qubit among targets/controls");
  }
}

void check_indices(const Gate& gate, std::size_t n_qubits) {
  validate_structure(gate);
  auto in_range = [n_qubits](Qubit q) { return q < n_qubits; };
  if (!std::all_of(gate.targets.begin(), gate.targets.end(), in_range) ||
      !std::all_of(gate.controls.begin(), gate.controls.end(), in_range)) {
    throw ShapeError(std::string(gate_name(gate.kind)) + ": qubit index out of range for " +
                     std::to_string(n_qubits) + " qubits");
  }
}

void check_unitary(const std::vector<Complex>& m, std::size_t d) {
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += std::conj(m[k * d + r]) * m[k * d + c];
      if (std::abs(acc - (r == c ? 1.0 : 0.0)) > 1e-10) {
        throw DomainError("custom gate matrix is not unitary");
      }
    }
  }
}

std::size_t checked_qubit_count(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("register of " + std::to_string(n_qubits) +
                        " qubits outside supported range 1.." + std::to_string(kMaxQubits));
  }
  return n_qubits;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kZ: return "Z";
    case GateKind::kT: return "T";
    case GateKind::kTdg: return "Tdg";
    case GateKind::kRy: return "Ry";
    case GateKind::kRz: return "Rz";
    case GateKind::kPhase: return "Phase";
    case GateKind::kSwap: return "Swap";
    case GateKind::kPhaseFlipAboutZero: return "PhaseFlipAboutZero";
    case GateKind::kGlobalPhase: return "GlobalPhase";
    case GateKind::kCustom: return "Custom";
  }
  return "?";
}

// ---------------------------------------------------------------- Gate

namespace {
Gate single(GateKind kind, Qubit q, double angle = 0.0) {
  Gate g;
  g.kind = kind;
  g.targets = {q};
  g.angle = angle;
  return g;
}
}  // namespace

Gate Gate::h(Qubit q) { return single(GateKind::kH, q); }
Gate Gate::x(Qubit q) { return single(GateKind::kX, q); }
Gate Gate::y(Qubit q) { return single(GateKind::kY, q); }
Gate Gate::z(Qubit q) { return single(GateKind::kZ, q); }
Gate Gate::t(Qubit q) { return single(GateKind::kT, q); }
Gate Gate::tdg(Qubit q) { return single(GateKind::kTdg, q); }
Gate Gate::ry(Qubit q, double angle) { return single(GateKind::kRy, q, angle); }
Gate Gate::rz(Qubit q, double angle) { return single(GateKind::kRz, q, angle); }
Gate Gate::phase(Qubit q, double angle) { return single(GateKind::kPhase, q, angle); }

Gate Gate::cnot(Qubit control, Qubit target) { return x(target).with_control(control); }

Gate Gate::toffoli(Qubit c0, Qubit c1, Qubit target) {
  return x(target).with_control(c0).with_control(c1);
}

Gate Gate::controlled_ry(Qubit control, Qubit target, double angle) {
  return ry(target, angle).with_control(control);
}

Gate Gate::controlled_phase(Qubit control, Qubit target, double angle) {
  return phase(target, angle).with_control(control);
}

Gate Gate::swap(Qubit a, Qubit b) {
  Gate g;
  g.kind = GateKind::kSwap;
  g.targets = {a, b};
  return g;
}

Gate Gate::phase_flip_about_zero(std::vector<Qubit> targets) {
  Gate g;
  g.kind = GateKind::kPhaseFlipAboutZero;
  g.targets = std::move(targets);
  validate_structure(g);
  return g;
}

Gate Gate::global_phase(double angle) {
  Gate g;
  g.kind = GateKind::kGlobalPhase;
  g.angle = angle;
  return g;
}

Gate Gate::custom(std::vector<Qubit> targets, std::vector<Complex> matrix) {
  Gate g;
  g.kind = GateKind::kCustom;
  g.targets = std::move(targets);
  g.matrix = std::move(matrix);
  validate_structure(g);
  check_unitary(g.matrix, std::size_t{1} << g.targets.size());
  return g;
}

Gate Gate::multi_controlled_ry(std::vector<Qubit> controls, std::uint64_t pattern, Qubit target,
                               double angle) {
  Gate g = ry(target, angle);
  g.controls = std::move(controls);
  const std::uint64_t all =
      g.controls.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.controls.size()) - 1;
  g.anti_controls = ~pattern & all;
  validate_structure(g);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::kT:
      g.kind = GateKind::kTdg;
      break;
    case GateKind::kTdg:
      g.kind = GateKind::kT;
      break;
    case GateKind::kRy:
    case GateKind::kRz:
    case GateKind::kPhase:
    case GateKind::kGlobalPhase:
      g.angle = -angle;
      break;
    case GateKind::kCustom: {
      const std::size_t d = std::size_t{1} << targets.size();
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) g.matrix[r * d + c] = std::conj(matrix[c * d + r]);
      }
      break;
    }
    default:
      break;  // self-inverse
  }
  return g;
}

Gate Gate::with_control(Qubit control) const {
  Gate g = *this;
  g.controls.push_back(control);
  validate_structure(g);
  return g;
}

std::vector<Complex> Gate::local_matrix() const {
  const double s2 = std::numbers::sqrt2 / 2;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::kH: return {s2, s2, s2, -s2};
    case GateKind::kX: return {0, 1, 1, 0};
    case GateKind::kY: return {0, -kI, kI, 0};
    case GateKind::kZ: return {1, 0, 0, -1};
    case GateKind::kT: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::kTdg: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateKind::kRy: return {c, -s, s, c};
    case GateKind::kRz: return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
    case GateKind::kPhase: return {1, 0, 0, std::polar(1.0, angle)};
    case GateKind::kSwap:
      return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::kPhaseFlipAboutZero: {
      const std::size_t d = std::size_t{1} << targets.size();
      std::vector<Complex> m(d * d, 0.0);
      for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
      m[0] = -1.0;
      return m;
    }
    case GateKind::kGlobalPhase: return {std::polar(1.0, angle)};
    case GateKind::kCustom: return matrix;
  }
  return {};
}

bool Gate::is_rotation() const {
  return kind == GateKind::kRy || kind == GateKind::kRz || kind == GateKind::kPhase;
}

// ---------------------------------------------------------------- Circuit

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

Circuit& Circuit::add(Gate gate) {
  check_indices(gate, n_qubits_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other, std::span<const Qubit> qubit_map) {
  if (qubit_map.empty()) {
    if (other.n_qubits() > n_qubits_) {
      throw ShapeError("cannot append a " + std::to_string(other.n_qubits()) +
                       "-qubit circuit to a " + std::to_string(n_qubits_) + "-qubit circuit");
    }
    for (const Gate& g : other.gates()) add(g);
  } else {
    if (qubit_map.size() != other.n_qubits()) throw ShapeError("qubit map length mismatch");
    for (Gate g : other.gates()) {
      for (Qubit& q : g.targets) q = qubit_map[q];
      for (Qubit& q : g.controls) q = qubit_map[q];
      add(std::move(g));
    }
  }
  oracle_calls_ += other.oracle_calls();
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits_);
  inv.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) inv.gates_.push_back(it->inverse());
  inv.oracle_calls_ = oracle_calls_;
  return inv;
}

Circuit Circuit::controlled(Qubit control) const {
  Circuit out(n_qubits_);
  out.gates_.reserve(gates_.size());
  for (const Gate& g : gates_) out.add(g.with_control(control));
  out.oracle_calls_ = oracle_calls_;
  return out;
}

std::size_t Circuit::rotation_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_rotation(); }));
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

void NoiseSpec::validate() const {
  if (!(p_error >= 0.0 && p_error <= 1.0)) {
    throw DomainError("p_error must lie in [0, 1], got " + std::to_string(p_error));
  }
}

// ---------------------------------------------------------------- QuantumState

QuantumState::QuantumState(std::size_t n_qubits)
    : n_qubits_(checked_qubit_count(n_qubits)), amplitudes_(std::size_t{1} << n_qubits_, 0.0) {
  amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

QuantumState QuantumState::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || (size & (size - 1)) != 0) {
    throw ShapeError("amplitude vector length must be a power of two >= 2");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(size));
  checked_qubit_count(n);
  double norm = 0;
  for (const Complex& a : amplitudes) norm += std::norm(a);
  if (!(norm > 0) || !std::isfinite(norm)) throw DomainError("amplitudes have zero or invalid norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : amplitudes) a *= scale;
  return QuantumState(n, std::move(amplitudes));
}

Complex QuantumState::amplitude(std::uint64_t index) const {
  if (index >= amplitudes_.size()) throw ShapeError("basis index out of range");
  return amplitudes_[index];
}

double QuantumState::probability(std::uint64_t index) const { return std::norm(amplitude(index)); }

double QuantumState::norm_squared() const {
  double total = 0;
  for (const Complex& a : amplitudes_) total += std::norm(a);
  return total;
}

std::vector<double> QuantumState::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes_[i]);
  return p;
}

double QuantumState::probability_of_one(Qubit qubit) const {
  if (qubit >= n_qubits_) throw ShapeError("qubit index out of range");
  double total = 0;
  const std::uint64_t half = amplitudes_.size() / 2;
  for (std::uint64_t i = 0; i < half; ++i) {
    total += std::norm(amplitudes_[insert_zero(i, qubit) | bit(qubit)]);
  }
  return total;
}

void QuantumState::check_gate(const Gate& gate) const { check_indices(gate, n_qubits_); }

void QuantumState::apply(const Gate& gate) {
  check_gate(gate);
  const ControlMask ctl = control_mask(gate);
  const std::uint64_t dim = amplitudes_.size();
  Complex* amp = amplitudes_.data();

  switch (gate.kind) {
    case GateKind::kGlobalPhase: {
      const Complex ph = std::polar(1.0, gate.angle);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (ctl.fires(i)) amp[i] *= ph;
      }
      return;
    }
    case GateKind::kPhaseFlipAboutZero: {
      std::uint64_t tmask = 0;
      for (Qubit q : gate.targets) tmask |= bit(q);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tmask) == 0 && ctl.fires(i)) amp[i] = -amp[i];
      }
      return;
    }
    case GateKind::kSwap: {
      const std::uint64_t ba = bit(gate.targets[0]), bb = bit(gate.targets[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & ba) && !(i & bb) && ctl.fires(i)) std::swap(amp[i], amp[i ^ ba ^ bb]);
      }
      return;
    }
    case GateKind::kCustom: {
      const std::size_t k = gate.targets.size();
      const std::size_t d = std::size_t{1} << k;
      std::uint64_t tmask = 0;
      std::vector<std::uint64_t> offsets(d, 0);
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t b = 0; b < k; ++b) {
          if ((j >> b) & 1) offsets[j] |= bit(gate.targets[b]);
        }
      }
      for (Qubit q : gate.targets) tmask |= bit(q);
      std::vector<Complex> in(d), out(d);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tmask) != 0 || !ctl.fires(i)) continue;
        for (std::size_t j = 0; j < d; ++j) in[j] = amp[i | offsets[j]];
        for (std::size_t r = 0; r < d; ++r) {
          Complex acc = 0;
          for (std::size_t c = 0; c < d; ++c) acc += gate.matrix[r * d + c] * in[c];
          out[r] = acc;
        }
        for (std::size_t j = 0; j < d; ++j) amp[i | offsets[j]] = out[j];
      }
      return;
    }
    default:
      break;
  }

  // Single-target gates: walk the 2^{n-1} index pairs differing in the target bit.
  const Qubit t = gate.targets[0];
  const std::uint64_t tb = bit(t);
  const std::uint64_t half = dim / 2;
  if (gate.kind == GateKind::kX) {
    for (std::uint64_t i = 0; i < half; ++i) {
      const std::uint64_t i0 = insert_zero(i, t);
      if (ctl.fires(i0)) std::swap(amp[i0], amp[i0 | tb]);
    }
    return;
  }
  const std::vector<Complex> m = gate.local_matrix();
  if (is_diagonal(gate.kind)) {
    const Complex d0 = m[0], d1 = m[3];
    const bool trivial_low = d0 == Complex(1.0, 0.0);
    for (std::uint64_t i = 0; i < half; ++i) {
      const std::uint64_t i0 = insert_zero(i, t);
      if (!ctl.fires(i0)) continue;
      if (!trivial_low) amp[i0] *= d0;
      amp[i0 | tb] *= d1;
    }
    return;
  }
  const Complex m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
  for (std::uint64_t i = 0; i < half; ++i) {
    const std::uint64_t i0 = insert_zero(i, t);
    if (!ctl.fires(i0)) continue;
    const std::uint64_t i1 = i0 | tb;
    const Complex a0 = amp[i0], a1 = amp[i1];
    amp[i0] = m00 * a0 + m01 * a1;
    amp[i1] = m10 * a0 + m11 * a1;
  }
}

void QuantumState::apply(const Circuit& circuit) {
  if (circuit.n_qubits() != n_qubits_) {
    throw ShapeError("circuit acts on " + std::to_string(circuit.n_qubits()) +
                     " qubits but state has " + std::to_string(n_qubits_));
  }
  for (const Gate& g : circuit.gates()) apply(g);
}

void QuantumState::apply_pauli(Qubit qubit, Pauli pauli) {
  switch (pauli) {
    case Pauli::kX: apply(Gate::x(qubit)); break;
    case Pauli::kY: apply(Gate::y(qubit)); break;
    case Pauli::kZ: apply(Gate::z(qubit)); break;
  }
}

double QuantumState::collapse(Qubit qubit, int outcome) {
  if (qubit >= n_qubits_) throw ShapeError("qubit index out of range");
  const double p1 = probability_of_one(qubit);
  const double p = outcome ? p1 : 1.0 - p1;
  if (!(p > 0)) throw DomainError("cannot collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    const bool one = (i >> qubit) & 1;
    if (one == static_cast<bool>(outcome)) {
      amplitudes_[i] *= scale;
    } else {
      amplitudes_[i] = 0.0;
    }
  }
  return p;
}

// ---------------------------------------------------------------- Histogram

std::string to_bitstring(std::uint64_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1) s[n_qubits - 1 - q] = '1';
  }
  return s;
}

std::size_t Histogram::count(std::uint64_t index) const {
  auto it = counts.find(index);
  return it == counts.end() ? 0 : it->second;
}

std::size_t Histogram::count(std::string_view bitstring) const {
  if (bitstring.size() != n_qubits) throw ShapeError("bitstring length mismatch");
  std::uint64_t index = 0;
  for (char c : bitstring) {
    if (c != '0' && c != '1') throw ShapeError("bitstring must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return count(index);
}

std::map<std::string, std::size_t> Histogram::by_bitstring() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [index, c] : counts) out[to_bitstring(index, n_qubits)] = c;
  return out;
}

// ---------------------------------------------------------------- free functions

QuantumState new_state(std::size_t n_qubits) { return QuantumState(n_qubits); }

QuantumState apply_gate(QuantumState state, const Gate& gate) {
  state.apply(gate);
  return state;
}

QuantumState run_circuit(QuantumState state, const Circuit& circuit,
                         const std::optional<NoiseSpec>& noise, Rng& rng) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw ShapeError("circuit acts on " + std::to_string(circuit.n_qubits()) +
                     " qubits but state has " + std::to_string(state.n_qubits()));
  }
  const bool noisy = noise && noise->p_error > 0.0;
  if (noise) noise->validate();
  for (const Gate& g : circuit.gates()) {
    state.apply(g);
    if (noisy && g.is_physical() && uniform01(rng) < noise->p_error) {
      const auto q = static_cast<Qubit>(uniform_index(rng, state.n_qubits()));
      const auto p = static_cast<Pauli>(uniform_index(rng, 3));
      state.apply_pauli(q, p);
    }
  }
  return state;
}

double probability_of(const QuantumState& state, std::uint64_t basis_index) {
  return state.probability(basis_index);
}

Histogram sample_indices(std::span<const double> probabilities, std::size_t n_qubits,
                         std::size_t shots, Rng& rng) {
  if (probabilities.empty()) throw ShapeError("empty probability vector");
  std::vector<double> cumulative(probabilities.size());
  double total = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    total += probabilities[i];
    cumulative[i] = total;
  }
  if (!(total > 0)) throw DomainError("probabilities sum to zero");
  std::size_t last_nonzero = probabilities.size() - 1;
  while (last_nonzero > 0 && probabilities[last_nonzero] <= 0) --last_nonzero;

  Histogram h;
  h.n_qubits = n_qubits;
  h.shots = shots;
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto index = static_cast<std::uint64_t>(it - cumulative.begin());
    if (index > last_nonzero) index = last_nonzero;
    ++h.counts[index];
  }
  return h;
}

Histogram measure_all(const QuantumState& state, std::size_t shots, Rng& rng) {
  const std::vector<double> p = state.probabilities();
  return sample_indices(p, state.n_qubits(), shots, rng);
}

std::pair<int, QuantumState> measure_one(QuantumState state, Qubit qubit, Rng& rng) {
  const double p1 = state.probability_of_one(qubit);
  const int outcome = uniform01(rng) < p1 ? 1 : 0;
  state.collapse(qubit, outcome);
  return {outcome, std::move(state)};
}

Circuit qft_circuit(std::size_t n_qubits, bool inverse) {
  Circuit c(n_qubits);
  for (std::size_t i = n_qubits; i-- > 0;) {
    c.add(Gate::h(static_cast<Qubit>(i)));
    for (std::size_t j = i; j-- > 0;) {
      c.add(Gate::controlled_phase(static_cast<Qubit>(j), static_cast<Qubit>(i),
                                   std::numbers::pi / static_cast<double>(std::uint64_t{1} << (i - j))));
    }
  }
  for (std::size_t i = 0; i < n_qubits / 2; ++i) {
    c.add(Gate::swap(static_cast<Qubit>(i), static_cast<Qubit>(n_qubits - 1 - i)));
  }
  return inverse ? c.inverse() : c;
}

void write_state(std::ostream& out, const QuantumState& state) {
  char line[256];
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const std::string bits = to_bitstring(i, state.n_qubits());
    std::snprintf(line, sizeof line, "%llu %s %.17g %.17g %.17g\n",
                  static_cast<unsigned long long>(i), bits.c_str(), amps[i].real(),
                  amps[i].imag(), std::norm(amps[i]));
    out << line;
  }
}

}  // namespace qmci
