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

// Amplitude estimation of a = P(flag qubit = 1) for A = R (P (x) I):
// Grover operator, schedule sampling with (noise-aware) maximum likelihood,
// canonical phase-estimation QAE, and Grover search.
//
// Oracle-call accounting: one shot of Q^m A uses the state-preparation
// circuit 2m + 1 times, so a schedule costs q = sum_k N_k (2 m_k + 1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qmci/dist_encode.h"
#include "qmci/qsim.h"
#include "qmci/rng.h"

namespace qmci {

struct EstimationProblem {
  StatePrepCircuit state_prep;
  Circuit oracle;  // acts on input qubits plus the flag qubit

  std::size_t input_qubits() const { return state_prep.circuit.n_qubits(); }
  std::size_t n_qubits() const { return input_qubits() + 1; }
  Qubit flag_qubit() const { return static_cast<Qubit>(input_qubits()); }

  /// A = R after P, on n + 1 qubits; tagged as one oracle call.
  Circuit a_circuit() const;

  /// Exact P(flag = 1) after A|0>.
  double exact_amplitude() const;
};

/// ShapeError unless the oracle acts on exactly input_qubits + 1 qubits.
EstimationProblem make_problem(StatePrepCircuit state_prep, Circuit oracle);

struct ScheduleEntry {
  std::uint64_t iterations = 0;  // Grover iterates m_k
  std::uint64_t shots = 1;       // N_k
};

class Schedule {
 public:
  Schedule() = default;

  /// DomainError unless iterations strictly increase and every shots >= 1.
  explicit Schedule(std::vector<ScheduleEntry> entries);

  /// m = 0, 1, 2, 4, ..., 2^{depth-2} with constant shots.
  static Schedule exponential(std::size_t depth, std::uint64_t shots);

  /// Deepest exponential schedule with the given shots whose cost fits in
  /// max_q. PlanError if even a single m = 0 round does not fit.
  static Schedule for_budget(std::uint64_t max_q, std::uint64_t shots);

  static std::uint64_t exponential_cost(std::size_t depth, std::uint64_t shots);

  const std::vector<ScheduleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t oracle_calls() const;
  std::uint64_t max_iterations() const;

 private:
  std::vector<ScheduleEntry> entries_;
};

struct EntryResult {
  std::uint64_t iterations = 0;
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;
};

struct ScheduleResults {
  std::vector<EntryResult> entries;
  /// P-uses tallied from the circuits actually executed, shot by shot.
  std::uint64_t oracle_calls = 0;
};

struct AmplitudeEstimate {
  double a_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t q = 0;
  double theta = 0.0;
  std::optional<double> lambda_hat;
  /// Likelihood too flat to identify a parameter (noise-aware fits).
  bool degenerate = false;
};

/// Q = -A S_0 A^dagger S_good. The -1 is an explicit global-phase gate so that
/// controlled powers of Q have eigenphases +-2 theta.
Circuit grover_operator(const EstimationProblem& problem);

/// Exact P(flag = 1) after Q^{m_k} A|0> for every schedule entry.
std::vector<double> amplified_probabilities(const EstimationProblem& problem,
                                            const Schedule& schedule);

/// Binomial hit counts from known per-entry probabilities.
ScheduleResults sample_schedule(std::span<const double> probabilities, const Schedule& schedule,
                                Rng& rng);

/// Simulates every shot of every entry. Noiseless shots sample the exact
/// amplified probability; with noise, each shot draws its Pauli error
/// locations and any shot that suffers an error is simulated as a full
/// trajectory.
ScheduleResults run_schedule(const EstimationProblem& problem, const Schedule& schedule,
                             const std::optional<NoiseSpec>& noise, Rng& rng);

/// Maximum likelihood over theta in [0, pi/2] for
///   L(theta) = prod_k sin^2((2m_k+1) theta)^{h_k} cos^2((2m_k+1) theta)^{N_k-h_k}
/// using a 100001-point grid, then a score-root refinement. The interval is
/// where the log-likelihood stays within 0.5 of its maximum.
AmplitudeEstimate mle_estimate(const ScheduleResults& results, const Schedule& schedule);

/// P(1 | m) = 1/2 + (sin^2((2m+1) theta) - 1/2) exp(-lambda (2m+1)).
double damped_probability(double theta, double lambda, std::uint64_t iterations);

struct NoiseAwareOptions {
  std::optional<double> fixed_lambda;
  double lambda_max = 1.0;
  std::size_t lambda_points = 48;
};

/// Joint (theta, lambda) maximum likelihood under the damped model.
AmplitudeEstimate noise_aware_mle(const ScheduleResults& results, const Schedule& schedule,
                                  const NoiseAwareOptions& options = {});

/// 2 (2^t - 1) + 1 state-preparation uses.
std::uint64_t canonical_oracle_calls(std::size_t t_qubits);

/// Gate-level phase-estimation circuit on n + 1 + t qubits (ancillas above
/// the system register). Used to cross-check the fast path.
Circuit canonical_qae_circuit(const EstimationProblem& problem, std::size_t t_qubits);

/// Exact distribution of the measured ancilla integer y in [0, 2^t).
std::vector<double> canonical_qae_distribution(const EstimationProblem& problem,
                                               std::size_t t_qubits);

/// One phase-estimation run; a_hat = sin^2(pi y / 2^t). The interval is
/// a_hat +- pi 2^-t (2 sqrt(a_hat) + pi 2^-t), clamped to [0, 1].
AmplitudeEstimate canonical_qae(const EstimationProblem& problem, std::size_t t_qubits, Rng& rng);
AmplitudeEstimate canonical_from_distribution(std::span<const double> distribution,
                                              std::size_t t_qubits, Rng& rng);

struct GroverSearchResult {
  std::uint64_t found = 0;
  std::size_t iterations = 0;
  double success_probability = 0.0;
};

/// round(pi / (4 asin(2^{-n/2})) - 1/2).
std::size_t grover_iterations(std::size_t n_qubits);

GroverSearchResult grover_search(std::uint64_t marked_index, std::size_t n_qubits, Rng& rng);

/// The state just before measurement in grover_search.
QuantumState grover_search_state(std::uint64_t marked_index, std::size_t n_qubits);

}  // namespace qmci
