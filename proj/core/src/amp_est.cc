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

#include "qmci/amp_est.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qmci/error.h"

namespace qmci {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMleGridPoints = 100001;

// ---------------------------------------------------------------- likelihoods

struct Term {
  double k;  // 2m + 1
  double hits;
  double misses;
};

std::vector<Term> make_terms(const ScheduleResults& results) {
  if (results.entries.empty()) throw DomainError("no schedule results to estimate from");
  std::vector<Term> terms;
  terms.reserve(results.entries.size());
  for (const EntryResult& e : results.entries) {
    if (e.hits > e.shots) throw DomainError("hit count exceeds shot count");
    terms.push_back({2.0 * static_cast<double>(e.iterations) + 1.0, static_cast<double>(e.hits),
                     static_cast<double>(e.shots - e.hits)});
  }
  return terms;
}

void check_consistent(const ScheduleResults& results, const Schedule& schedule) {
  const auto& entries = schedule.entries();
  if (entries.size() != results.entries.size()) {
    throw ShapeError("results do not match the schedule");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].iterations != results.entries[i].iterations ||
        entries[i].shots != results.entries[i].shots) {
      throw ShapeError("results entry " + std::to_string(i) + " does not match the schedule");
    }
  }
}

// h log p + (N - h) log(1 - p) with 0 log 0 = 0; takes p and 1 - p separately
// so both tails keep full precision.
inline double binomial_term(double hits, double misses, double p, double one_minus_p) {
  double v = 0.0;
  if (hits > 0) v += hits * (p > 0 ? std::log(p) : kNegInf);
  if (misses > 0) v += misses * (one_minus_p > 0 ? std::log(one_minus_p) : kNegInf);
  return v;
}

double log_likelihood(double theta, const std::vector<Term>& terms) {
  double ll = 0.0;
  for (const Term& t : terms) {
    const double s = std::sin(t.k * theta), c = std::cos(t.k * theta);
    ll += binomial_term(t.hits, t.misses, s * s, c * c);
    if (ll == kNegInf) return ll;
  }
  return ll;
}

// d/dtheta of log_likelihood.
double score(double theta, const std::vector<Term>& terms) {
  double d = 0.0;
  for (const Term& t : terms) {
    const double s = std::sin(t.k * theta), c = std::cos(t.k * theta);
    if (t.hits > 0) d += 2.0 * t.k * t.hits * c / s;
    if (t.misses > 0) d -= 2.0 * t.k * t.misses * s / c;
  }
  return d;
}

double damped_log_likelihood(double theta, double lambda, const std::vector<Term>& terms) {
  double ll = 0.0;
  for (const Term& t : terms) {
    const double s = std::sin(t.k * theta), c = std::cos(t.k * theta);
    const double d = std::exp(-lambda * t.k);
    ll += binomial_term(t.hits, t.misses, 0.5 + (s * s - 0.5) * d, 0.5 + (c * c - 0.5) * d);
    if (ll == kNegInf) return ll;
  }
  return ll;
}

template <typename F>
double golden_max(F&& f, double lo, double hi, int iterations = 100) {
  constexpr double r = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  // Endpoints win ties so boundary maxima (a in {0, 1}) land exactly.
  double best = 0.5 * (a + b), fbest = f(best);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx >= fbest) {
      best = x;
      fbest = fx;
    }
  }
  return best;
}

// Root of a decreasing function with g(lo) > 0 > g(hi).
template <typename G>
double bisect_root(G&& g, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Point where f crosses `level` between x_below (f < level) and x_above.
template <typename F>
double bisect_level(F&& f, double level, double x_below, double x_above) {
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (x_below + x_above);
    if (mid == x_below || mid == x_above) break;
    if (f(mid) >= level) {
      x_above = mid;
    } else {
      x_below = mid;
    }
  }
  return 0.5 * (x_below + x_above);
}

std::uint64_t checked_cost(std::uint64_t shots, std::uint64_t iterations) {
  const std::uint64_t per_shot = 2 * iterations + 1;
  if (shots > std::numeric_limits<std::uint64_t>::max() / per_shot) {
    throw DomainError("schedule cost overflows");
  }
  return shots * per_shot;
}

// Flag qubit probabilities after Q^m A|0> for sorted iteration counts.
std::vector<double> amplified(const EstimationProblem& problem,
                              std::span<const std::uint64_t> iterations) {
  const Circuit a = problem.a_circuit();
  const Circuit q = grover_operator(problem);
  QuantumState state(problem.n_qubits());
  state.apply(a);
  std::uint64_t applied = 0;
  std::vector<double> out;
  out.reserve(iterations.size());
  for (std::uint64_t m : iterations) {
    for (; applied < m; ++applied) state.apply(q);
    out.push_back(state.probability_of_one(problem.flag_qubit()));
  }
  return out;
}

AmplitudeEstimate finish(double theta, double theta_lo, double theta_hi, std::uint64_t q) {
  AmplitudeEstimate est;
  est.theta = theta;
  est.a_hat = std::pow(std::sin(theta), 2);
  est.ci_low = std::min(est.a_hat, std::pow(std::sin(theta_lo), 2));
  est.ci_high = std::max(est.a_hat, std::pow(std::sin(theta_hi), 2));
  est.q = q;
  return est;
}

}  // namespace

// ---------------------------------------------------------------- problem

Circuit EstimationProblem::a_circuit() const {
  Circuit a(n_qubits());
  a.append(state_prep.circuit);
  a.append(oracle);
  return a;
}

double EstimationProblem::exact_amplitude() const {
  QuantumState state(n_qubits());
  state.apply(a_circuit());
  return state.probability_of_one(flag_qubit());
}

EstimationProblem make_problem(StatePrepCircuit state_prep, Circuit oracle) {
  if (oracle.n_qubits() != state_prep.circuit.n_qubits() + 1) {
    throw ShapeError("oracle acts on " + std::to_string(oracle.n_qubits()) +
                     " qubits, expected " + std::to_string(state_prep.circuit.n_qubits() + 1));
  }
  if (oracle.n_qubits() > kMaxQubits) throw CapacityError("problem exceeds the qubit limit");
  return {std::move(state_prep), std::move(oracle)};
}

// ---------------------------------------------------------------- schedule

Schedule::Schedule(std::vector<ScheduleEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].shots < 1) throw DomainError("schedule entries need at least one shot");
    if (i > 0 && entries_[i].iterations <= entries_[i - 1].iterations) {
      throw DomainError("schedule iteration counts must strictly increase");
    }
  }
  (void)oracle_calls();  // overflow check
}

Schedule Schedule::exponential(std::size_t depth, std::uint64_t shots) {
  if (depth < 1 || depth > 40) throw DomainError("exponential schedule depth must be in 1..40");
  std::vector<ScheduleEntry> entries;
  entries.push_back({0, shots});
  for (std::size_t j = 0; j + 1 < depth; ++j) entries.push_back({std::uint64_t{1} << j, shots});
  return Schedule(std::move(entries));
}

std::uint64_t Schedule::exponential_cost(std::size_t depth, std::uint64_t shots) {
  // N (2^L + L - 2)
  return shots * ((std::uint64_t{1} << depth) + depth - 2);
}

Schedule Schedule::for_budget(std::uint64_t max_q, std::uint64_t shots) {
  if (shots < 1) throw DomainError("shots must be >= 1");
  if (shots > max_q) {
    throw PlanError("budget " + std::to_string(max_q) + " cannot fit one round of " +
                    std::to_string(shots) + " shots; minimum feasible q is " +
                    std::to_string(shots));
  }
  std::size_t depth = 1;
  while (depth < 40 && exponential_cost(depth + 1, shots) <= max_q) ++depth;
  return exponential(depth, shots);
}

std::uint64_t Schedule::oracle_calls() const {
  std::uint64_t q = 0;
  for (const ScheduleEntry& e : entries_) {
    const std::uint64_t c = checked_cost(e.shots, e.iterations);
    if (q > std::numeric_limits<std::uint64_t>::max() - c) throw DomainError("schedule cost overflows");
    q += c;
  }
  return q;
}

std::uint64_t Schedule::max_iterations() const {
  return entries_.empty() ? 0 : entries_.back().iterations;
}

// ---------------------------------------------------------------- Grover operator

Circuit grover_operator(const EstimationProblem& problem) {
  const std::size_t n = problem.n_qubits();
  const Circuit a = problem.a_circuit();
  Circuit q(n);
  q.add(Gate::z(problem.flag_qubit()));
  q.append(a.inverse());
  std::vector<Qubit> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Qubit>(i);
  q.add(Gate::phase_flip_about_zero(all));
  q.append(a);
  q.add(Gate::global_phase(std::numbers::pi));
  return q;
}

std::vector<double> amplified_probabilities(const EstimationProblem& problem,
                                            const Schedule& schedule) {
  std::vector<std::uint64_t> iterations;
  for (const ScheduleEntry& e : schedule.entries()) iterations.push_back(e.iterations);
  return amplified(problem, iterations);
}

ScheduleResults sample_schedule(std::span<const double> probabilities, const Schedule& schedule,
                                Rng& rng) {
  if (probabilities.size() != schedule.size()) throw ShapeError("one probability per entry needed");
  ScheduleResults out;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const ScheduleEntry& e = schedule.entries()[i];
    const double p = std::clamp(probabilities[i], 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(e.shots, p);
    out.entries.push_back({e.iterations, e.shots, draw(rng)});
    out.oracle_calls += checked_cost(e.shots, e.iterations);
  }
  return out;
}

ScheduleResults run_schedule(const EstimationProblem& problem, const Schedule& schedule,
                             const std::optional<NoiseSpec>& noise, Rng& rng) {
  if (noise) noise->validate();
  const std::vector<double> clean = amplified_probabilities(problem, schedule);
  if (!noise || noise->p_error == 0.0) return sample_schedule(clean, schedule, rng);

  const Circuit a = problem.a_circuit();
  const Circuit q = grover_operator(problem);
  auto physical = [](const Circuit& c) {
    return static_cast<std::uint64_t>(std::count_if(
        c.gates().begin(), c.gates().end(), [](const Gate& g) { return g.is_physical(); }));
  };
  const std::uint64_t a_physical = physical(a), q_physical = physical(q);
  const double p = noise->p_error;
  const double log_keep = std::log1p(-p);
  const std::size_t n = problem.n_qubits();

  struct ErrorEvent {
    std::uint64_t position;
    Qubit qubit;
    Pauli pauli;
  };

  ScheduleResults out;
  std::vector<ErrorEvent> events;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const ScheduleEntry& e = schedule.entries()[k];
    const std::uint64_t gates = a_physical + e.iterations * q_physical;
    std::uint64_t hits = 0;
    for (std::uint64_t shot = 0; shot < e.shots; ++shot) {
      // Error positions among the physical gates: geometric gaps.
      events.clear();
      std::uint64_t pos = 0;
      for (;;) {
        if (p < 1.0) {
          const double u = 1.0 - uniform01(rng);  // (0, 1]
          const double gap = std::floor(std::log(u) / log_keep);
          if (gap >= static_cast<double>(gates - pos)) break;
          pos += static_cast<std::uint64_t>(gap);
        }
        if (pos >= gates) break;
        const auto qubit = static_cast<Qubit>(uniform_index(rng, n));
        const auto pauli = static_cast<Pauli>(uniform_index(rng, 3));
        events.push_back({pos, qubit, pauli});
        ++pos;
      }

      double p_one = clean[k];
      if (!events.empty()) {
        QuantumState state(n);
        std::uint64_t physical_index = 0;
        std::size_t next = 0;
        auto run = [&](const Circuit& c) {
          for (const Gate& g : c.gates()) {
            state.apply(g);
            if (!g.is_physical()) continue;
            while (next < events.size() && events[next].position == physical_index) {
              state.apply_pauli(events[next].qubit, events[next].pauli);
              ++next;
            }
            ++physical_index;
          }
        };
        run(a);
        for (std::uint64_t m = 0; m < e.iterations; ++m) run(q);
        p_one = state.probability_of_one(problem.flag_qubit());
      }
      if (uniform01(rng) < p_one) ++hits;
      out.oracle_calls += a.oracle_calls() + e.iterations * q.oracle_calls();
    }
    out.entries.push_back({e.iterations, e.shots, hits});
  }
  return out;
}

// ---------------------------------------------------------------- MLE

AmplitudeEstimate mle_estimate(const ScheduleResults& results, const Schedule& schedule) {
  check_consistent(results, schedule);
  const std::vector<Term> terms = make_terms(results);
  const std::size_t grid = kMleGridPoints;
  const double step = kHalfPi / static_cast<double>(grid - 1);

  std::vector<double> ll(grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    ll[i] = log_likelihood(static_cast<double>(i) * step, terms);
    if (ll[i] > ll[best]) best = i;
  }
  if (ll[best] == kNegInf) throw DomainError("likelihood vanishes everywhere");

  auto f = [&](double th) { return log_likelihood(th, terms); };
  const double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) * step;
  const double hi = best + 1 >= grid ? kHalfPi : static_cast<double>(best + 1) * step;
  double theta = static_cast<double>(best) * step;
  double candidate;
  const double s_lo = score(lo, terms), s_hi = score(hi, terms);
  if (s_lo > 0 && s_hi < 0) {
    candidate = bisect_root([&](double th) { return score(th, terms); }, lo, hi);
  } else {
    candidate = golden_max(f, lo, hi);
  }
  double ll_best = ll[best];
  if (f(candidate) >= ll_best) {
    theta = candidate;
    ll_best = f(candidate);
  }

  const double level = ll_best - 0.5;
  auto grid_theta = [&](std::size_t i) { return static_cast<double>(i) * step; };

  double theta_lo = 0.0;
  {
    auto j = static_cast<std::ptrdiff_t>(std::floor(theta / step));
    j = std::min<std::ptrdiff_t>(j, static_cast<std::ptrdiff_t>(grid) - 1);
    double above = theta;
    while (j >= 0 && ll[static_cast<std::size_t>(j)] >= level) {
      above = std::min(above, grid_theta(static_cast<std::size_t>(j)));
      --j;
    }
    if (j >= 0) theta_lo = bisect_level(f, level, grid_theta(static_cast<std::size_t>(j)), above);
  }
  double theta_hi = kHalfPi;
  {
    auto j = static_cast<std::size_t>(std::ceil(theta / step));
    double below = theta;
    while (j < grid && ll[j] >= level) {
      below = std::max(below, grid_theta(j));
      ++j;
    }
    if (j < grid) theta_hi = bisect_level(f, level, grid_theta(j), below);
  }
  return finish(theta, theta_lo, theta_hi, schedule.oracle_calls());
}

double damped_probability(double theta, double lambda, std::uint64_t iterations) {
  const double k = 2.0 * static_cast<double>(iterations) + 1.0;
  const double s = std::sin(k * theta);
  return 0.5 + (s * s - 0.5) * std::exp(-lambda * k);
}

AmplitudeEstimate noise_aware_mle(const ScheduleResults& results, const Schedule& schedule,
                                  const NoiseAwareOptions& options) {
  check_consistent(results, schedule);
  const std::vector<Term> terms = make_terms(results);

  std::vector<double> lambdas;
  if (options.fixed_lambda) {
    if (!(*options.fixed_lambda >= 0)) throw DomainError("lambda must be >= 0");
    lambdas = {*options.fixed_lambda};
  } else {
    if (!(options.lambda_max > 0) || options.lambda_points < 2) {
      throw DomainError("lambda grid needs lambda_max > 0 and at least two points");
    }
    lambdas.push_back(0.0);
    const double lo = 1e-4;
    const std::size_t rest = options.lambda_points - 1;
    for (std::size_t j = 0; j < rest; ++j) {
      const double u = rest == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(rest - 1);
      lambdas.push_back(lo * std::pow(options.lambda_max / lo, u));
    }
  }

  // The theta grid resolves the fastest oscillation with ~32 points per period.
  double k_max = 1.0;
  for (const Term& t : terms) k_max = std::max(k_max, t.k);
  const std::size_t grid = std::clamp<std::size_t>(static_cast<std::size_t>(32.0 * k_max) + 1,
                                                   20001, 400001);
  const double step = kHalfPi / static_cast<double>(grid - 1);

  std::vector<std::vector<double>> sin2(terms.size(), std::vector<double>(grid));
  std::vector<std::vector<double>> cos2(terms.size(), std::vector<double>(grid));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (std::size_t i = 0; i < grid; ++i) {
      const double phi = terms[t].k * static_cast<double>(i) * step;
      const double s = std::sin(phi), c = std::cos(phi);
      sin2[t][i] = s * s;
      cos2[t][i] = c * c;
    }
  }

  std::vector<double> profile(grid, kNegInf);
  std::vector<std::size_t> profile_arg(grid, 0);
  std::vector<double> damp(terms.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    for (std::size_t t = 0; t < terms.size(); ++t) damp[t] = std::exp(-lambdas[j] * terms[t].k);
    for (std::size_t i = 0; i < grid; ++i) {
      double ll = 0.0;
      for (std::size_t t = 0; t < terms.size() && ll != kNegInf; ++t) {
        ll += binomial_term(terms[t].hits, terms[t].misses, 0.5 + (sin2[t][i] - 0.5) * damp[t],
                            0.5 + (cos2[t][i] - 0.5) * damp[t]);
      }
      if (ll > profile[i]) {
        profile[i] = ll;
        profile_arg[i] = j;
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid; ++i) {
    if (profile[i] > profile[best]) best = i;
  }
  if (profile[best] == kNegInf) throw DomainError("likelihood vanishes everywhere");

  // Coordinate-wise golden-section refinement inside the neighbouring cells.
  double theta = static_cast<double>(best) * step;
  const std::size_t jbest = profile_arg[best];
  double lambda = lambdas[jbest];
  double ll_best = damped_log_likelihood(theta, lambda, terms);
  const double th_lo = best == 0 ? 0.0 : theta - step;
  const double th_hi = best + 1 >= grid ? kHalfPi : theta + step;
  const double la_lo = jbest == 0 ? lambdas[0] : lambdas[jbest - 1];
  const double la_hi = jbest + 1 >= lambdas.size() ? lambdas[jbest] : lambdas[jbest + 1];
  for (int round = 0; round < 6; ++round) {
    const double th = golden_max(
        [&](double x) { return damped_log_likelihood(x, lambda, terms); }, th_lo, th_hi);
    if (damped_log_likelihood(th, lambda, terms) >= ll_best) {
      theta = th;
      ll_best = damped_log_likelihood(theta, lambda, terms);
    }
    if (la_hi > la_lo) {
      const double la = golden_max(
          [&](double x) { return damped_log_likelihood(theta, x, terms); }, la_lo, la_hi);
      if (damped_log_likelihood(theta, la, terms) >= ll_best) {
        lambda = la;
        ll_best = damped_log_likelihood(theta, lambda, terms);
      }
    }
  }

  // Profile-likelihood interval for theta on the grid.
  const double peak = std::max(ll_best, profile[best]);
  const double level = peak - 0.5;
  auto interpolate = [&](std::size_t below, std::size_t above) {
    const double fb = profile[below], fa = profile[above];
    const double w = (fa == fb || fb == kNegInf) ? 0.0 : (fa - level) / (fa - fb);
    const double tb = static_cast<double>(below) * step, ta = static_cast<double>(above) * step;
    return ta + w * (tb - ta);
  };
  double theta_lo = 0.0, theta_hi = kHalfPi;
  {
    std::size_t j = best;
    while (j > 0 && profile[j - 1] >= level) --j;
    if (j > 0) theta_lo = std::min(theta, interpolate(j - 1, j));
  }
  {
    std::size_t j = best;
    while (j + 1 < grid && profile[j + 1] >= level) ++j;
    if (j + 1 < grid) theta_hi = std::max(theta, interpolate(j + 1, j));
  }

  AmplitudeEstimate est = finish(theta, theta_lo, theta_hi, schedule.oracle_calls());
  est.lambda_hat = lambda;
  if (!options.fixed_lambda) {
    double lo_ll = std::numeric_limits<double>::infinity(), hi_ll = kNegInf;
    for (double la : lambdas) {
      const double v = damped_log_likelihood(theta, la, terms);
      lo_ll = std::min(lo_ll, v);
      hi_ll = std::max(hi_ll, v);
    }
    est.degenerate = (hi_ll - lo_ll) < 0.5;
  }
  if (!options.fixed_lambda) {
    // Full damping predicts 1/2 at every depth for any theta. If a likelihood
    // ratio test (2 dof, 95%) cannot reject it, neither parameter is identified.
    double ll_flat = 0.0;
    for (const Term& t : terms) ll_flat += binomial_term(t.hits, t.misses, 0.5, 0.5);
    if (peak - ll_flat < 0.5 * 5.991) {
      est.degenerate = true;
      est.ci_low = 0.0;
      est.ci_high = 1.0;
    }
  }
  if (theta_lo <= 0.0 && theta_hi >= kHalfPi) est.degenerate = true;
  return est;
}

// ---------------------------------------------------------------- canonical QAE

std::uint64_t canonical_oracle_calls(std::size_t t_qubits) {
  return 2 * ((std::uint64_t{1} << t_qubits) - 1) + 1;
}

namespace {
void check_canonical(const EstimationProblem& problem, std::size_t t_qubits) {
  if (t_qubits < 1 || t_qubits > 10) {
    throw CapacityError("phase register of " + std::to_string(t_qubits) +
                        " qubits outside supported range 1..10");
  }
  if (problem.n_qubits() + t_qubits > kMaxQubits) {
    throw CapacityError("phase estimation needs " + std::to_string(problem.n_qubits() + t_qubits) +
                        " qubits, limit is " + std::to_string(kMaxQubits));
  }
}
}  // namespace

Circuit canonical_qae_circuit(const EstimationProblem& problem, std::size_t t_qubits) {
  check_canonical(problem, t_qubits);
  const std::size_t system = problem.n_qubits();
  const std::size_t total = system + t_qubits;
  Circuit c(total);
  c.append(problem.a_circuit());
  for (std::size_t j = 0; j < t_qubits; ++j) c.add(Gate::h(static_cast<Qubit>(system + j)));
  Circuit q(total);
  q.append(grover_operator(problem));
  for (std::size_t j = 0; j < t_qubits; ++j) {
    const Circuit cq = q.controlled(static_cast<Qubit>(system + j));
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << j); ++r) c.append(cq);
  }
  std::vector<Qubit> ancillas(t_qubits);
  for (std::size_t j = 0; j < t_qubits; ++j) ancillas[j] = static_cast<Qubit>(system + j);
  c.append(qft_circuit(t_qubits, /*inverse=*/true), ancillas);
  return c;
}

std::vector<double> canonical_qae_distribution(const EstimationProblem& problem,
                                               std::size_t t_qubits) {
  check_canonical(problem, t_qubits);
  // After the Hadamards and controlled powers the register holds
  //   2^{-t/2} sum_k |k> (x) Q^k A|0>,
  // so it is assembled directly from successive powers of Q on the system
  // register, then the inverse QFT runs on the ancillas.
  const std::size_t system = problem.n_qubits();
  const std::size_t total = system + t_qubits;
  const std::uint64_t powers = std::uint64_t{1} << t_qubits;
  const std::uint64_t sys_dim = std::uint64_t{1} << system;
  const Circuit q = grover_operator(problem);

  std::vector<Complex> amps(std::uint64_t{1} << total);
  QuantumState state(system);
  state.apply(problem.a_circuit());
  const double scale = 1.0 / std::sqrt(static_cast<double>(powers));
  for (std::uint64_t k = 0; k < powers; ++k) {
    if (k > 0) state.apply(q);
    const auto sys = state.amplitudes();
    for (std::uint64_t s = 0; s < sys_dim; ++s) amps[(k << system) | s] = sys[s] * scale;
  }
  QuantumState full = QuantumState::from_amplitudes(std::move(amps));
  Circuit iqft(total);
  std::vector<Qubit> ancillas(t_qubits);
  for (std::size_t j = 0; j < t_qubits; ++j) ancillas[j] = static_cast<Qubit>(system + j);
  iqft.append(qft_circuit(t_qubits, /*inverse=*/true), ancillas);
  full.apply(iqft);

  std::vector<double> dist(powers, 0.0);
  const auto out = full.amplitudes();
  for (std::uint64_t y = 0; y < powers; ++y) {
    for (std::uint64_t s = 0; s < sys_dim; ++s) dist[y] += std::norm(out[(y << system) | s]);
  }
  return dist;
}

AmplitudeEstimate canonical_from_distribution(std::span<const double> distribution,
                                              std::size_t t_qubits, Rng& rng) {
  const std::uint64_t powers = std::uint64_t{1} << t_qubits;
  if (distribution.size() != powers) throw ShapeError("distribution length is not 2^t");
  const Histogram h = sample_indices(distribution, t_qubits, 1, rng);
  const std::uint64_t y = h.counts.begin()->first;
  const double m = static_cast<double>(powers);
  AmplitudeEstimate est;
  est.theta = std::numbers::pi * static_cast<double>(y) / m;
  est.a_hat = std::pow(std::sin(est.theta), 2);
  const double half_width =
      std::numbers::pi / m * (2.0 * std::sqrt(est.a_hat) + std::numbers::pi / m);
  est.ci_low = std::max(0.0, est.a_hat - half_width);
  est.ci_high = std::min(1.0, est.a_hat + half_width);
  est.q = canonical_oracle_calls(t_qubits);
  return est;
}

AmplitudeEstimate canonical_qae(const EstimationProblem& problem, std::size_t t_qubits, Rng& rng) {
  const std::vector<double> dist = canonical_qae_distribution(problem, t_qubits);
  return canonical_from_distribution(dist, t_qubits, rng);
}

// ---------------------------------------------------------------- Grover search

std::size_t grover_iterations(std::size_t n_qubits) {
  const double theta = std::asin(std::pow(2.0, -0.5 * static_cast<double>(n_qubits)));
  return static_cast<std::size_t>(std::llround(std::numbers::pi / (4.0 * theta) - 0.5));
}

QuantumState grover_search_state(std::uint64_t marked_index, std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits > 12) throw CapacityError("Grover search supports 2..12 qubits");
  if (marked_index >= (std::uint64_t{1} << n_qubits)) {
    throw ShapeError("marked index " + std::to_string(marked_index) + " outside 2^" +
                     std::to_string(n_qubits));
  }
  std::vector<Qubit> all(n_qubits);
  for (std::size_t i = 0; i < n_qubits; ++i) all[i] = static_cast<Qubit>(i);

  Circuit a(n_qubits);
  for (Qubit q : all) a.add(Gate::h(q));
  Circuit mark(n_qubits);  // -1 on |marked>
  for (Qubit q : all) {
    if ((marked_index >> q) & 1) mark.add(Gate::x(q));
  }
  const Circuit unflip = mark;
  mark.add(Gate::phase_flip_about_zero(all));
  mark.append(unflip);

  Circuit q(n_qubits);
  q.append(mark);
  q.append(a.inverse());
  q.add(Gate::phase_flip_about_zero(all));
  q.append(a);
  q.add(Gate::global_phase(std::numbers::pi));

  QuantumState state(n_qubits);
  state.apply(a);
  const std::size_t m = grover_iterations(n_qubits);
  for (std::size_t i = 0; i < m; ++i) state.apply(q);
  return state;
}

GroverSearchResult grover_search(std::uint64_t marked_index, std::size_t n_qubits, Rng& rng) {
  const QuantumState state = grover_search_state(marked_index, n_qubits);
  GroverSearchResult r;
  r.iterations = grover_iterations(n_qubits);
  r.success_probability = state.probability(marked_index);
  r.found = measure_all(state, 1, rng).counts.begin()->first;
  return r;
}

}  // namespace qmci
