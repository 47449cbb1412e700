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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "qmci/amp_est.h"
#include "qmci/error.h"
#include "qmci/parallel.h"
#include "qmci/rng.h"

namespace qmci::cli {
namespace {

const Json& empty_object() {
  static const Json e = Json::object();
  return e;
}

const Json& child(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? empty_object() : *it;
}

double number(const Json& j, const char* key, double fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ConfigError(where + "." + key + " must be a number");
  return it->get<double>();
}

double required_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + "." + key + " is required");
  return number(j, key, 0.0, where);
}

std::uint64_t count(const Json& j, const char* key, std::uint64_t fallback,
                    const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

std::string text(const Json& j, const char* key, const std::string& fallback,
                 const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) throw ConfigError(where + "." + key + " must be a string");
  return it->get<std::string>();
}

DistributionSpec parse_model(const Json& m) {
  check_keys(m, {"family", "mu", "sigma", "low", "high", "weights"}, "model");
  const Family family = parse_family(text(m, "family", "gaussian", "model"));
  DistributionSpec spec;
  switch (family) {
    case Family::kGaussian:
    case Family::kLognormal:
      spec = DistributionSpec::gaussian(number(m, "mu", 0.0, "model"), number(m, "sigma", 1.0, "model"));
      spec.family = family;
      break;
    case Family::kUniform:
      spec = DistributionSpec::uniform(required_number(m, "low", "model"),
                                       required_number(m, "high", "model"));
      break;
    case Family::kExplicit: {
      if (!m.contains("weights") || !m["weights"].is_array()) {
        throw ConfigError("model.weights must be an array for the explicit family");
      }
      std::vector<double> w;
      for (const Json& v : m["weights"]) {
        if (!v.is_number()) throw ConfigError("model.weights must contain numbers");
        w.push_back(v.get<double>());
      }
      spec = DistributionSpec::explicit_weights(std::move(w));
      break;
    }
  }
  return spec;
}

Integrand parse_integrand(const Json& j) {
  check_keys(j, {"name", "threshold", "low", "high", "value"}, "integrand");
  const std::string name = text(j, "name", "relu", "integrand");
  if (name == "identity") return Integrand::identity();
  if (name == "square") return Integrand::square();
  if (name == "relu") return Integrand::relu(number(j, "threshold", 0.0, "integrand"));
  if (name == "indicator") {
    return Integrand::indicator(required_number(j, "low", "integrand"),
                                required_number(j, "high", "integrand"));
  }
  if (name == "constant") return Integrand::constant(required_number(j, "value", "integrand"));
  throw ConfigError("unknown integrand '" + name + "'");
}

std::optional<NoiseSpec> parse_noise(const Json& config) {
  if (!config.contains("noise")) return std::nullopt;
  const Json& j = config["noise"];
  check_keys(j, {"p_error"}, "noise");
  NoiseSpec noise{number(j, "p_error", 0.0, "noise")};
  noise.validate();
  return noise;
}

struct FourierOptions {
  std::size_t order = 10;
  Estimator estimator = Estimator::kMle;
  std::uint64_t base_shots = 8;
};

FourierOptions parse_fourier(const Json& config) {
  const Json& j = child(config, "fourier");
  check_keys(j, {"K", "estimator", "base_shots"}, "fourier");
  FourierOptions o;
  o.order = count(j, "K", 10, "fourier");
  o.estimator = parse_estimator(text(j, "estimator", "mle", "fourier"));
  o.base_shots = count(j, "base_shots", 8, "fourier");
  if (o.base_shots < 1) throw ConfigError("fourier.base_shots must be >= 1");
  return o;
}

std::size_t threads_of(const Json& config) {
  const std::uint64_t t = count(config, "threads", 1, "config");
  return t == 0 ? 1 : static_cast<std::size_t>(t);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json estimate_json(const AmplitudeEstimate& e) {
  Json j;
  j["a_hat"] = e.a_hat;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["q"] = e.q;
  if (e.lambda_hat) j["lambda_hat"] = *e.lambda_hat;
  if (e.degenerate) j["degenerate"] = true;
  return j;
}

// Largest phase register whose cost fits `q` and the qubit limit.
std::size_t canonical_t_for(std::uint64_t q, std::size_t system_qubits) {
  std::size_t t = 0;
  while (t < 10 && canonical_oracle_calls(t + 1) <= q && system_qubits + t + 1 <= kMaxQubits) ++t;
  return t;
}

}  // namespace

void check_keys(const Json& object, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ProblemSetup build_setup(const Json& config) {
  ProblemSetup s;
  if (config.contains("model") && config.contains("dataset")) {
    throw ConfigError("give either 'model' or 'dataset', not both");
  }
  if (config.contains("dataset")) {
    const Json& d = config["dataset"];
    check_keys(d, {"path", "family"}, "dataset");
    const std::string path = text(d, "path", "", "dataset");
    if (path.empty()) throw ConfigError("dataset.path is required");
    const Family family = parse_family(text(d, "family", "gaussian", "dataset"));
    s.fitted = fit_model(load_csv(path), family);
    s.spec = s.fitted->spec();
  } else {
    s.spec = parse_model(child(config, "model"));
  }
  s.spec.validate();

  const std::uint64_t n = count(config, "n_qubits", 6, "config");
  if (n < 1 || n > kMaxQubits) {
    throw CapacityError("n_qubits = " + std::to_string(n) + " outside 1.." +
                        std::to_string(kMaxQubits));
  }
  auto [lo, hi] = s.spec.default_range();
  if (config.contains("range")) {
    const Json& r = config["range"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      throw ConfigError("range must be [x_lo, x_hi]");
    }
    lo = r[0].get<double>();
    hi = r[1].get<double>();
  }
  s.integrand = parse_integrand(child(config, "integrand"));
  s.dist = discretize(s.spec, n, lo, hi);
  s.function = normalize_function(evaluate_on_grid(s.integrand, s.dist));
  s.truth = brute_force_expectation(s.dist, s.function);
  return s;
}

// ---------------------------------------------------------------- estimate

Json cmd_estimate(const Json& config) {
  check_keys(config,
             {"model", "dataset", "n_qubits", "range", "integrand", "method", "shots", "total_q",
              "t_qubits", "fourier", "noise", "seed", "threads", "out"},
             "estimate config");
  const ProblemSetup s = build_setup(config);
  const std::string method = text(config, "method", "fourier", "config");
  const std::uint64_t total_q = count(config, "total_q", 10000, "config");
  const std::uint64_t shots = count(config, "shots", 4, "config");
  const std::optional<NoiseSpec> noise = parse_noise(config);
  Rng rng(count(config, "seed", 0, "config"));

  Json report;
  report["method"] = method;
  report["n_qubits"] = s.dist.n_qubits;
  report["range"] = {s.dist.x_lo, s.dist.x_hi};
  report["integrand"] = s.integrand.name();
  if (s.fitted) report["fitted_model"] = Json::parse(model_to_json(*s.fitted));

  double value = 0.0, ci_low = 0.0, ci_high = 0.0;
  std::uint64_t q = 0;
  if (method == "classical") {
    if (total_q < 1) throw ConfigError("total_q must be >= 1");
    value = classical_mc(s.dist, s.function.raw_values, total_q, rng);
    ci_low = ci_high = value;
    q = total_q;
  } else if (method == "mle" || method == "noise_aware" || method == "canonical") {
    const EstimationProblem problem =
        make_problem(synthesize_state_prep(s.dist), build_table_oracle(s.function, s.dist.n_qubits));
    AmplitudeEstimate est;
    if (method == "canonical") {
      const std::uint64_t t = count(config, "t_qubits", 6, "config");
      est = canonical_qae(problem, t, rng);
    } else {
      const Schedule schedule = Schedule::for_budget(total_q, std::max<std::uint64_t>(1, shots));
      const ScheduleResults r = run_schedule(problem, schedule, noise, rng);
      est = method == "mle" ? mle_estimate(r, schedule) : noise_aware_mle(r, schedule);
      est.q = r.oracle_calls;
    }
    report["amplitude"] = estimate_json(est);
    value = s.function.denormalize(est.a_hat);
    ci_low = s.function.denormalize(est.ci_low);
    ci_high = s.function.denormalize(est.ci_high);
    q = est.q;
  } else if (method == "fourier") {
    const FourierOptions fo = parse_fourier(config);
    const FourierSeries series = cosine_series(s.function, fo.order);
    const StatePrepCircuit sp = synthesize_state_prep(s.dist);
    BudgetPlan plan;
    if (fo.estimator != Estimator::kExact) plan = allocate_budget(series, total_q, fo.base_shots);
    const FourierEstimate fe = estimate_fourier(sp, series, fo.estimator, plan, noise, rng);
    value = fe.value;
    ci_low = fe.ci_low;
    ci_high = fe.ci_high;
    q = fe.q;
    report["estimator"] = std::string(estimator_name(fo.estimator));
    report["K"] = series.order();
    report["tail_bound"] = series.tail_bound;
    report["tail_bound_denormalized"] = series.f_scale * series.tail_bound;
    Json hs = Json::array();
    for (const HarmonicEstimate& h : fe.harmonics) {
      Json hj;
      hj["k"] = h.harmonic;
      hj["coefficient"] = h.coefficient;
      hj["cos_expectation"] = h.cos_expectation;
      hj["oracle_rotations"] = h.oracle_rotations;
      hj["amplitude"] = estimate_json(h.estimate);
      hs.push_back(hj);
    }
    report["harmonics"] = hs;
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  report["estimate"] = value;
  report["ci_low"] = ci_low;
  report["ci_high"] = ci_high;
  report["q"] = q;
  report["truth"] = s.truth.value;
  report["abs_error"] = std::abs(value - s.truth.value);
  return report;
}

// ---------------------------------------------------------------- converge

std::vector<ConvergenceRow> cmd_converge(const Json& config) {
  check_keys(config,
             {"model", "dataset", "n_qubits", "range", "integrand", "methods", "q_grid", "trials",
              "shots", "fourier", "noise", "seed", "threads", "out"},
             "converge config");
  const ProblemSetup s = build_setup(config);

  std::vector<std::string> methods = {"classical", "qmci-mle"};
  if (config.contains("methods")) {
    const Json& m = config["methods"];
    if (!m.is_array() || m.empty()) throw ConfigError("methods must be a non-empty array");
    methods.clear();
    for (const Json& v : m) {
      if (!v.is_string()) throw ConfigError("methods must contain strings");
      methods.push_back(v.get<std::string>());
    }
  }
  if (!config.contains("q_grid") || !config["q_grid"].is_array()) {
    throw ConfigError("q_grid must be an array of oracle-call counts");
  }
  std::vector<std::uint64_t> q_grid;
  for (const Json& v : config["q_grid"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      throw ConfigError("q_grid entries must be positive integers");
    }
    q_grid.push_back(v.get<std::uint64_t>());
  }
  if (q_grid.size() < 5) throw ConfigError("q_grid needs at least 5 points");
  const std::uint64_t trials = count(config, "trials", 200, "config");
  if (trials < 50) throw ConfigError("trials must be >= 50");
  const std::uint64_t shots = count(config, "shots", 4, "config");
  if (shots < 1) throw ConfigError("shots must be >= 1");
  const std::uint64_t seed = count(config, "seed", 0, "config");
  const std::size_t threads = threads_of(config);
  const std::optional<NoiseSpec> noise = parse_noise(config);
  const FourierOptions fo = parse_fourier(config);
  const double truth = s.truth.value;

  // One convergence cell: the achieved q and a per-trial estimator.
  struct Cell {
    std::uint64_t q = 0;
    std::function<double(Rng&)> trial;
  };

  std::optional<EstimationProblem> table_problem;
  auto problem = [&]() -> const EstimationProblem& {
    if (!table_problem) {
      table_problem = make_problem(synthesize_state_prep(s.dist),
                                   build_table_oracle(s.function, s.dist.n_qubits));
    }
    return *table_problem;
  };
  std::optional<StatePrepCircuit> state_prep;
  std::optional<FourierSeries> series;

  std::vector<ConvergenceRow> rows;
  for (const std::string& method : methods) {
    std::uint64_t previous_q = 0;
    for (std::uint64_t target : q_grid) {
      Cell cell;
      if (method == "classical") {
        cell.q = target;
        cell.trial = [&s, target](Rng& rng) {
          return classical_mc(s.dist, s.function.raw_values, target, rng);
        };
      } else if (method == "qmci-mle" || method == "qmci-noise-aware") {
        if (shots > target) continue;
        const Schedule schedule = Schedule::for_budget(target, shots);
        cell.q = schedule.oracle_calls();
        const EstimationProblem& p = problem();
        auto probs = std::make_shared<std::vector<double>>(amplified_probabilities(p, schedule));
        const bool aware = method == "qmci-noise-aware";
        cell.trial = [&s, &p, schedule, probs, aware, noise](Rng& rng) {
          const ScheduleResults r = (noise && noise->p_error > 0)
                                        ? run_schedule(p, schedule, noise, rng)
                                        : sample_schedule(*probs, schedule, rng);
          const AmplitudeEstimate e = aware ? noise_aware_mle(r, schedule) : mle_estimate(r, schedule);
          return s.function.denormalize(e.a_hat);
        };
      } else if (method == "qmci-canonical") {
        const std::size_t t = canonical_t_for(target, s.dist.n_qubits + 1);
        if (t == 0) continue;
        cell.q = canonical_oracle_calls(t);
        auto dist = std::make_shared<std::vector<double>>(canonical_qae_distribution(problem(), t));
        cell.trial = [&s, dist, t](Rng& rng) {
          return s.function.denormalize(canonical_from_distribution(*dist, t, rng).a_hat);
        };
      } else if (method == "qmci-fourier") {
        if (!series) {
          series = cosine_series(s.function, fo.order);
          state_prep = synthesize_state_prep(s.dist);
        }
        BudgetPlan plan;
        if (fo.estimator != Estimator::kExact) {
          try {
            plan = allocate_budget(*series, target, fo.base_shots);
          } catch (const PlanError&) {
            continue;  // budget below the minimum feasible q
          }
        }
        cell.q = fo.estimator == Estimator::kExact ? target : plan.planned_q();
        if (fo.estimator == Estimator::kCanonical) {
          const bool runnable = std::all_of(plan.harmonics.begin(), plan.harmonics.end(),
                                            [](const HarmonicBudget& h) { return h.t_qubits > 0; });
          if (!runnable) continue;
          cell.q = 0;
          for (const HarmonicBudget& h : plan.harmonics) cell.q += canonical_oracle_calls(h.t_qubits);
        }
        const FourierSeries& ser = *series;
        const StatePrepCircuit& sp = *state_prep;
        const Estimator est = fo.estimator;
        cell.trial = [&ser, &sp, plan, est, noise](Rng& rng) {
          return estimate_fourier(sp, ser, est, plan, noise, rng).value;
        };
      } else {
        throw ConfigError("unknown convergence method '" + method + "'");
      }
      if (cell.q == 0 || cell.q == previous_q) continue;
      previous_q = cell.q;

      std::vector<double> squared(trials);
      parallel_for(trials, threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, method, target, i));
        const double e = cell.trial(rng) - truth;
        squared[i] = e * e;
      });
      double sum = 0.0;
      for (double v : squared) sum += v;
      rows.push_back({method, cell.q, trials, sum / static_cast<double>(trials), truth});
    }
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "method,q,trials,mse,truth\n";
  for (const ConvergenceRow& r : rows) {
    out << r.method << ',' << r.q << ',' << r.trials << ',' << format_double(r.mse) << ','
        << format_double(r.truth) << '\n';
  }
}

std::vector<ConvergenceRow> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("convergence CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "method,q,trials,mse,truth") {
    throw DomainError("unexpected convergence CSV header: " + line);
  }
  std::vector<ConvergenceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) {
      throw DomainError("line " + std::to_string(line_no) + ": expected 5 fields");
    }
    try {
      rows.push_back({fields[0], std::stoull(fields[1]), std::stoull(fields[2]),
                      std::stod(fields[3]), std::stod(fields[4])});
    } catch (const std::exception&) {
      throw DomainError("line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

std::vector<SlopeFit> fit_slopes(const std::vector<ConvergenceRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (const ConvergenceRow& r : rows) {
    if (!points.count(r.method)) order.push_back(r.method);
    auto& pts = points[r.method];
    if (r.mse > 0 && r.q > 0) pts.emplace_back(std::log(static_cast<double>(r.q)), std::log(r.mse));
  }
  std::vector<SlopeFit> fits;
  for (const std::string& method : order) {
    const auto& pts = points[method];
    if (pts.size() < 5) {
      throw DomainError("method '" + method + "' has " + std::to_string(pts.size()) +
                        " usable rows; slope fitting needs at least 5");
    }
    const auto n = static_cast<double>(pts.size());
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0)) throw DomainError("method '" + method + "' has no spread in q");
    SlopeFit f;
    f.method = method;
    f.points = pts.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (const auto& [x, y] : pts) {
      const double r = y - (f.intercept + f.slope * x);
      ssr += r * r;
    }
    f.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
    fits.push_back(f);
  }
  return fits;
}

Json cmd_slope(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open " + csv_path);
  Json out = Json::object();
  for (const SlopeFit& f : fit_slopes(read_convergence_csv(in))) {
    out[f.method] = {{"slope", f.slope},
                     {"stderr", f.stderr_slope},
                     {"intercept", f.intercept},
                     {"points", f.points}};
  }
  return out;
}

// ---------------------------------------------------------------- grover-demo, fit

Json cmd_grover_demo(const Json& config) {
  check_keys(config, {"n_qubits", "marked", "shots", "seed", "threads", "out"}, "grover-demo config");
  const std::uint64_t n = count(config, "n_qubits", 4, "config");
  const std::uint64_t marked = count(config, "marked", 0, "config");
  const std::uint64_t shots = count(config, "shots", 1000, "config");
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (n < 2 || n > 12) throw CapacityError("grover-demo supports 2..12 qubits");
  if (marked >= (std::uint64_t{1} << n)) {
    throw ConfigError("marked index " + std::to_string(marked) + " must be below 2^" +
                      std::to_string(n));
  }
  Rng rng(count(config, "seed", 0, "config"));
  const QuantumState state = grover_search_state(marked, n);
  const Histogram h = measure_all(state, shots, rng);
  Json out;
  out["n_qubits"] = n;
  out["marked"] = marked;
  out["iterations"] = grover_iterations(n);
  out["exact_success"] = state.probability(marked);
  out["empirical_success"] = static_cast<double>(h.count(marked)) / static_cast<double>(shots);
  out["shots"] = shots;
  out["classical_expected_queries"] = static_cast<double>(std::uint64_t{1} << n) / 2.0;
  return out;
}

Json cmd_fit(const Json& config) {
  check_keys(config, {"dataset", "seed", "threads", "out"}, "fit config");
  const Json& d = child(config, "dataset");
  check_keys(d, {"path", "family"}, "dataset");
  const std::string path = text(d, "path", "", "dataset");
  if (path.empty()) throw ConfigError("dataset.path is required");
  const FittedModel m = fit_model(load_csv(path), parse_family(text(d, "family", "gaussian", "dataset")));
  return Json::parse(model_to_json(m));
}

}  // namespace qmci::cli
