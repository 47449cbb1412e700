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

// Exact statevector simulation of the circuit model.
//
// Conventions used throughout the library:
//   * amplitudes are std::complex<double>;
//   * qubit 0 is the least-significant bit of a basis index, so the basis
//     state |q_{n-1} ... q_1 q_0> has index sum_j q_j 2^j;
//   * bitstrings are printed most-significant qubit first.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmci/rng.h"

namespace qmci {

using Complex = std::complex<double>;
using Qubit = std::uint32_t;

inline constexpr std::size_t kMaxQubits = 26;

enum class GateKind {
  kH,
  kX,
  kY,
  kZ,
  kT,
  kTdg,
  kRy,     // exp(-i angle Y / 2)
  kRz,     // exp(-i angle Z / 2)
  kPhase,  // diag(1, e^{i angle})
  kSwap,
  kPhaseFlipAboutZero,  // -1 on |0...0> of the targets
  kGlobalPhase,         // e^{i angle}; becomes a relative phase once controlled
  kCustom,              // dense unitary on up to three targets
};

std::string_view gate_name(GateKind kind);

/// One gate application. Any kind may carry controls; a control fires on |1>
/// unless the matching bit of `anti_controls` is set, in which case it fires
/// on |0>. CNOT is X with one control, Toffoli is X with two.
struct Gate {
  GateKind kind = GateKind::kH;
  std::vector<Qubit> targets;
  std::vector<Qubit> controls;
  std::uint64_t anti_controls = 0;
  double angle = 0.0;
  std::vector<Complex> matrix;  // kCustom only, row-major 2^k x 2^k

  static Gate h(Qubit q);
  static Gate x(Qubit q);
  static Gate y(Qubit q);
  static Gate z(Qubit q);
  static Gate t(Qubit q);
  static Gate tdg(Qubit q);
  static Gate ry(Qubit q, double angle);
  static Gate rz(Qubit q, double angle);
  static Gate phase(Qubit q, double angle);
  static Gate cnot(Qubit control, Qubit target);
  static Gate toffoli(Qubit c0, Qubit c1, Qubit target);
  static Gate controlled_ry(Qubit control, Qubit target, double angle);
  static Gate controlled_phase(Qubit control, Qubit target, double angle);
  static Gate swap(Qubit a, Qubit b);
  static Gate phase_flip_about_zero(std::vector<Qubit> targets);
  static Gate global_phase(double angle);
  static Gate custom(std::vector<Qubit> targets, std::vector<Complex> matrix);

  /// Ry on `target` that fires only when the control register reads
  /// `pattern` (bit i of pattern is the required value of controls[i]).
  static Gate multi_controlled_ry(std::vector<Qubit> controls, std::uint64_t pattern,
                                  Qubit target, double angle);

  Gate inverse() const;
  Gate with_control(Qubit control) const;

  /// Matrix of the gate on its targets, ignoring controls. Empty for
  /// kPhaseFlipAboutZero and kGlobalPhase's 1x1 case is returned as [e^{i angle}].
  std::vector<Complex> local_matrix() const;

  bool is_rotation() const;
  bool is_physical() const { return kind != GateKind::kGlobalPhase; }
};

/// Ordered gate list over a fixed register. `oracle_calls` counts how many
/// uses of a state-preparation circuit the sequence contains; it is summed by
/// append() and kept by inverse() and controlled().
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits = 0);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  std::size_t oracle_calls() const { return oracle_calls_; }
  void set_oracle_calls(std::size_t calls) { oracle_calls_ = calls; }

  /// Throws ShapeError on out-of-range or colliding indices.
  Circuit& add(Gate gate);

  /// Appends `other`, mapping its qubit i onto qubit_map[i] (identity when
  /// the map is empty).
  Circuit& append(const Circuit& other, std::span<const Qubit> qubit_map = {});

  Circuit inverse() const;
  Circuit controlled(Qubit control) const;

  std::size_t rotation_count() const;
  std::size_t count(GateKind kind) const;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
  std::size_t oracle_calls_ = 0;
};

struct NoiseSpec {
  double p_error = 0.0;  // per physical gate

  void validate() const;
};

enum class Pauli { kX, kY, kZ };

class QuantumState {
 public:
  /// |0...0> on n qubits; CapacityError unless 1 <= n <= kMaxQubits.
  explicit QuantumState(std::size_t n_qubits);

  /// Normalizes the given amplitudes; length must be a power of two.
  static QuantumState from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const;
  double probability(std::uint64_t index) const;
  double norm_squared() const;
  std::vector<double> probabilities() const;

  /// Probability that `qubit` reads 1.
  double probability_of_one(Qubit qubit) const;

  void apply(const Gate& gate);
  void apply(const Circuit& circuit);
  void apply_pauli(Qubit qubit, Pauli pauli);

  /// Projects `qubit` onto `bit` and renormalizes. Returns the probability
  /// of that outcome before projection.
  double collapse(Qubit qubit, int bit);

 private:
  QuantumState(std::size_t n_qubits, std::vector<Complex> amplitudes);

  void check_gate(const Gate& gate) const;

  std::size_t n_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Measurement counts keyed by basis index.
struct Histogram {
  std::size_t n_qubits = 0;
  std::size_t shots = 0;
  std::map<std::uint64_t, std::size_t> counts;

  std::size_t count(std::uint64_t index) const;
  std::size_t count(std::string_view bitstring) const;
  std::map<std::string, std::size_t> by_bitstring() const;
};

std::string to_bitstring(std::uint64_t index, std::size_t n_qubits);

QuantumState new_state(std::size_t n_qubits);
QuantumState apply_gate(QuantumState state, const Gate& gate);

/// Applies the circuit in order. With noise, after each physical gate a
/// uniformly random Pauli hits a uniformly random qubit with probability
/// p_error (one stochastic trajectory).
QuantumState run_circuit(QuantumState state, const Circuit& circuit,
                         const std::optional<NoiseSpec>& noise, Rng& rng);

double probability_of(const QuantumState& state, std::uint64_t basis_index);
Histogram measure_all(const QuantumState& state, std::size_t shots, Rng& rng);
std::pair<int, QuantumState> measure_one(QuantumState state, Qubit qubit, Rng& rng);

/// Draws `shots` indices from a probability vector (need not be normalized).
Histogram sample_indices(std::span<const double> probabilities, std::size_t n_qubits,
                         std::size_t shots, Rng& rng);

/// H and controlled-phase network computing
///   |x> -> 2^{-n/2} sum_y e^{2 pi i x y / 2^n} |y>
/// including the final qubit-order reversal. `inverse` gives the adjoint.
Circuit qft_circuit(std::size_t n_qubits, bool inverse = false);

/// Text dump, one line per basis index: "index bitstring re im prob".
void write_state(std::ostream& out, const QuantumState& state);

}  // namespace qmci
