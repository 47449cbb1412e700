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

#include "qmci/fourier_qmci.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmci/error.h"

namespace qmci {

double FourierSeries::evaluate(double x) const {
  double v = 0.5 * a0;
  for (std::size_t k = 1; k <= coefficients.size(); ++k) {
    v += coefficients[k - 1] * std::cos(static_cast<double>(k) * fundamental * x);
  }
  return v;
}

std::vector<std::size_t> FourierSeries::active_harmonics() const {
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= coefficients.size(); ++k) {
    if (coefficients[k - 1] != 0.0) ks.push_back(k);
  }
  return ks;
}

FourierSeries cosine_series(const BoundedFunction& f, std::size_t order) {
  const std::size_t size = f.size();
  if (size < 2) throw ShapeError("cosine series needs at least two grid points");
  const double span = static_cast<double>(size - 1);
  FourierSeries s;
  s.grid_size = size;
  s.fundamental = std::numbers::pi / span;
  s.f_min = f.f_min;
  s.f_scale = f.scale();
  order = std::min(order, size - 1);

  auto analyse = [&](std::size_t k) {
    // Trapezoid weights on the endpoints make the grid transform exactly invertible.
    double acc = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
      const double w = (x == 0 || x == size - 1) ? 0.5 : 1.0;
      acc += w * f.normalized[x] *
             std::cos(static_cast<double>(k) * s.fundamental * static_cast<double>(x));
    }
    return 2.0 * acc / span;
  };

  s.a0 = analyse(0);
  s.coefficients.resize(order);
  for (std::size_t k = 1; k <= order; ++k) {
    s.coefficients[k - 1] = analyse(k);
    if (k == size - 1) s.coefficients[k - 1] *= 0.5;
  }
  // Round-off noise on exactly-zero coefficients would activate harmonics needlessly.
  for (double& a : s.coefficients) {
    if (std::abs(a) < 1e-13) a = 0.0;
  }

  double worst = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    worst = std::max(worst, std::abs(f.normalized[x] - s.evaluate(static_cast<double>(x))));
  }
  s.tail_bound = worst;
  return s;
}

std::uint64_t BudgetPlan::planned_q() const {
  std::uint64_t q = 0;
  for (const HarmonicBudget& h : harmonics) q += h.schedule.oracle_calls();
  return q;
}

const HarmonicBudget* BudgetPlan::find(std::size_t harmonic) const {
  for (const HarmonicBudget& h : harmonics) {
    if (h.harmonic == harmonic) return &h;
  }
  return nullptr;
}

BudgetPlan allocate_budget(const FourierSeries& series, std::uint64_t total_q,
                           std::uint64_t base_shots) {
  if (base_shots < 1) throw PlanError("base_shots must be >= 1");
  BudgetPlan plan;
  plan.total_q = total_q;
  const std::vector<std::size_t> active = series.active_harmonics();
  if (active.empty()) return plan;

  std::vector<double> weight;
  double total_weight = 0.0;
  for (std::size_t k : active) {
    weight.push_back(std::pow(std::abs(series.coefficient(k)), 2.0 / 3.0));
    total_weight += weight.back();
  }
  std::vector<std::uint64_t> share(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    share[i] = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(total_q) * weight[i] / total_weight));
  }

  auto min_share = *std::min_element(share.begin(), share.end());
  if (min_share < base_shots) {
    const double w_min = *std::min_element(weight.begin(), weight.end()) / total_weight;
    auto needed = static_cast<std::uint64_t>(std::ceil(static_cast<double>(base_shots) / w_min));
    while (static_cast<std::uint64_t>(std::floor(static_cast<double>(needed) * w_min)) < base_shots) {
      ++needed;
    }
    throw PlanError("budget of " + std::to_string(total_q) + " oracle calls is infeasible for " +
                    std::to_string(active.size()) + " harmonics at " + std::to_string(base_shots) +
                    " shots per round; minimum feasible q is " + std::to_string(needed));
  }

  // Per-shot cost of an exponential schedule of this depth is 2^L + L - 2.
  std::size_t depth = 1;
  while (depth < 40 && Schedule::exponential_cost(depth + 1, base_shots) <= min_share) ++depth;
  const std::uint64_t per_shot = Schedule::exponential_cost(depth, 1);

  for (std::size_t i = 0; i < active.size(); ++i) {
    HarmonicBudget hb;
    hb.harmonic = active[i];
    hb.budget = share[i];
    hb.schedule = Schedule::exponential(depth, share[i] / per_shot);
    std::size_t t = 0;
    while (t < 10 && canonical_oracle_calls(t + 1) <= share[i]) ++t;
    hb.t_qubits = t;
    plan.harmonics.push_back(std::move(hb));
  }
  return plan;
}

std::string_view estimator_name(Estimator e) {
  switch (e) {
    case Estimator::kMle: return "mle";
    case Estimator::kCanonical: return "canonical";
    case Estimator::kNoiseAware: return "noise_aware";
    case Estimator::kExact: return "exact";
  }
  return "?";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "mle") return Estimator::kMle;
  if (name == "canonical") return Estimator::kCanonical;
  if (name == "noise_aware" || name == "noise-aware") return Estimator::kNoiseAware;
  if (name == "exact") return Estimator::kExact;
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

EstimationProblem harmonic_problem(const StatePrepCircuit& state_prep, const FourierSeries& series,
                                   std::size_t harmonic) {
  const std::size_t n = state_prep.circuit.n_qubits();
  if (series.grid_size != (std::size_t{1} << n)) {
    throw ShapeError("series grid does not match the state-preparation register");
  }
  const HarmonicSpec spec{static_cast<double>(harmonic) * series.fundamental, 0.0};
  return make_problem(state_prep, build_harmonic_oracle(spec, n));
}

FourierEstimate estimate_fourier(const StatePrepCircuit& state_prep, const FourierSeries& series,
                                 Estimator estimator, const BudgetPlan& plan,
                                 const std::optional<NoiseSpec>& noise, Rng& rng) {
  const std::vector<std::size_t> active = series.active_harmonics();
  if (estimator != Estimator::kExact) {
    for (std::size_t k : active) {
      if (plan.find(k) == nullptr) {
        throw PlanError("budget plan has no entry for harmonic " + std::to_string(k));
      }
    }
  }

  FourierEstimate out;
  double normalized = 0.5 * series.a0;
  double variance = 0.0;
  for (std::size_t k : active) {
    const EstimationProblem problem = harmonic_problem(state_prep, series, k);
    HarmonicEstimate h;
    h.harmonic = k;
    h.coefficient = series.coefficient(k);
    h.oracle_rotations = problem.oracle.rotation_count();
    switch (estimator) {
      case Estimator::kExact: {
        const double a = problem.exact_amplitude();
        h.estimate.a_hat = h.estimate.ci_low = h.estimate.ci_high = a;
        h.estimate.theta = std::asin(std::sqrt(std::clamp(a, 0.0, 1.0)));
        break;
      }
      case Estimator::kMle:
      case Estimator::kNoiseAware: {
        const HarmonicBudget& hb = *plan.find(k);
        const ScheduleResults r = run_schedule(problem, hb.schedule, noise, rng);
        h.estimate = estimator == Estimator::kMle ? mle_estimate(r, hb.schedule)
                                                  : noise_aware_mle(r, hb.schedule);
        h.estimate.q = r.oracle_calls;
        break;
      }
      case Estimator::kCanonical: {
        const HarmonicBudget& hb = *plan.find(k);
        if (hb.t_qubits == 0) {
          throw PlanError("harmonic " + std::to_string(k) +
                          " budget is too small for a phase-estimation run");
        }
        h.estimate = canonical_qae(problem, hb.t_qubits, rng);
        break;
      }
    }
    h.amplitude = h.estimate.a_hat;
    h.cos_expectation = 1.0 - 2.0 * h.amplitude;
    normalized += h.coefficient * h.cos_expectation;
    const double half = 0.5 * (h.estimate.ci_high - h.estimate.ci_low);
    variance += std::pow(2.0 * std::abs(h.coefficient) * half, 2);
    out.q += h.estimate.q;
    out.harmonics.push_back(std::move(h));
  }

  out.normalized = std::clamp(normalized, 0.0, 1.0);
  out.value = series.denormalize(out.normalized);
  const double half = std::sqrt(variance);
  out.ci_low = series.denormalize(std::clamp(out.normalized - half, 0.0, 1.0));
  out.ci_high = series.denormalize(std::clamp(out.normalized + half, 0.0, 1.0));
  return out;
}

}  // namespace qmci
