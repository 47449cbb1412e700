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

// Cosine-series integration: the normalized integrand g on the grid is
// extended evenly about both endpoints (period 2(N-1) in index units) and
// expanded as g(x) ~ a0/2 + sum_k a_k cos(k w0 x), w0 = pi / (N-1). Each
// E[cos(k w0 x)] is an amplitude estimation with an (n+1)-rotation oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qmci/amp_est.h"
#include "qmci/dist_encode.h"
#include "qmci/func_oracle.h"
#include "qmci/rng.h"

namespace qmci {

struct FourierSeries {
  double a0 = 0.0;
  std::vector<double> coefficients;  // a_1 .. a_K
  double fundamental = 0.0;          // w0, radians per grid index
  std::size_t grid_size = 0;
  /// max_x |g(x) - reconstruction(x)| over the grid.
  double tail_bound = 0.0;
  /// Affine record of the normalization, for denormalizing estimates.
  double f_min = 0.0;
  double f_scale = 0.0;

  std::size_t order() const { return coefficients.size(); }
  double coefficient(std::size_t k) const { return k == 0 ? a0 : coefficients.at(k - 1); }
  double evaluate(double x) const;
  double denormalize(double normalized) const { return f_min + f_scale * normalized; }
  std::vector<std::size_t> active_harmonics() const;
};

/// Type-I discrete cosine analysis of f.normalized. K is capped at N - 1;
/// the k = N - 1 term is stored with its half weight folded in.
FourierSeries cosine_series(const BoundedFunction& f, std::size_t order);

struct HarmonicBudget {
  std::size_t harmonic = 0;
  std::uint64_t budget = 0;  // share of total_q
  Schedule schedule;         // likelihood-based estimators
  std::size_t t_qubits = 0;  // canonical estimator; 0 when the share is too small
};

struct BudgetPlan {
  std::vector<HarmonicBudget> harmonics;
  std::uint64_t total_q = 0;

  /// Cost of the schedules as planned.
  std::uint64_t planned_q() const;
  const HarmonicBudget* find(std::size_t harmonic) const;
};

/// Splits total_q across the active harmonics in proportion to |a_k|^{2/3}.
/// All harmonics share one exponential depth: the deepest at which every
/// harmonic still gets at least base_shots shots per entry; each harmonic's
/// shots are floor(share / cost-per-shot). PlanError naming the minimum
/// feasible q when even depth 1 cannot give base_shots everywhere.
BudgetPlan allocate_budget(const FourierSeries& series, std::uint64_t total_q,
                           std::uint64_t base_shots);

enum class Estimator { kMle, kCanonical, kNoiseAware, kExact };

std::string_view estimator_name(Estimator e);
Estimator parse_estimator(std::string_view name);  // ConfigError on unknown names

struct HarmonicEstimate {
  std::size_t harmonic = 0;
  double coefficient = 0.0;
  double amplitude = 0.0;        // estimated P(flag = 1)
  double cos_expectation = 0.0;  // 1 - 2 amplitude
  AmplitudeEstimate estimate;
  std::size_t oracle_rotations = 0;
};

struct FourierEstimate {
  double normalized = 0.0;  // estimate of E[g], clamped to [0, 1]
  double value = 0.0;       // denormalized E[f]
  double ci_low = 0.0;      // denormalized interval
  double ci_high = 0.0;
  std::uint64_t q = 0;
  std::vector<HarmonicEstimate> harmonics;
};

/// Estimates every active harmonic with the chosen estimator and combines
/// them. kExact reads exact amplitudes, consumes q = 0 and ignores the plan.
FourierEstimate estimate_fourier(const StatePrepCircuit& state_prep, const FourierSeries& series,
                                 Estimator estimator, const BudgetPlan& plan,
                                 const std::optional<NoiseSpec>& noise, Rng& rng);

/// Problem whose amplitude is sum_x p(x) sin^2(k w0 x / 2).
EstimationProblem harmonic_problem(const StatePrepCircuit& state_prep, const FourierSeries& series,
                                   std::size_t harmonic);

}  // namespace qmci
