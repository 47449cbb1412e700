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

#include "qmci/data_pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qmci/error.h"

namespace qmci {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double mean_of(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double population_sd(std::span<const double> xs, double mean) {
  NeumaierSum s;
  for (double x : xs) s.add((x - mean) * (x - mean));
  return std::sqrt(s.value() / static_cast<double>(xs.size()));
}

}  // namespace

Dataset parse_csv(std::istream& in, std::string source_path) {
  Dataset data;
  data.source_path = std::move(source_path);
  std::vector<std::size_t> rejected;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view field = trim(line);
    if (field.empty()) continue;
    double v;
    if (parse_double(field, v)) {
      data.values.push_back(v);
    } else if (!seen_content) {
      // header row
    } else {
      rejected.push_back(line_no);
    }
    seen_content = true;
  }
  if (!rejected.empty()) {
    std::string msg = data.source_path + ": non-numeric rows at line(s)";
    for (std::size_t i = 0; i < rejected.size() && i < 20; ++i) msg += " " + std::to_string(rejected[i]);
    if (rejected.size() > 20) msg += " ...";
    throw DomainError(msg);
  }
  if (data.values.empty()) throw DomainError(data.source_path + ": no numeric rows");
  return data;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_csv(in, path.string());
}

DistributionSpec FittedModel::spec() const {
  switch (family) {
    case Family::kGaussian: return DistributionSpec::gaussian(parameters.at(0), parameters.at(1));
    case Family::kLognormal: return DistributionSpec::lognormal(parameters.at(0), parameters.at(1));
    case Family::kUniform: return DistributionSpec::uniform(parameters.at(0), parameters.at(1));
    case Family::kExplicit: break;
  }
  throw DomainError("fitted models cannot be explicit");
}

FittedModel fit_model(const Dataset& data, Family family) {
  if (data.values.empty()) throw DomainError("cannot fit an empty dataset");
  for (double v : data.values) {
    if (!std::isfinite(v)) throw DomainError("dataset contains non-finite values");
  }
  FittedModel m;
  m.family = family;
  m.n_observations = data.values.size();
  const auto n = static_cast<double>(data.values.size());
  switch (family) {
    case Family::kGaussian:
    case Family::kLognormal: {
      std::vector<double> xs = data.values;
      double log_jacobian = 0.0;
      if (family == Family::kLognormal) {
        for (double& x : xs) {
          if (!(x > 0)) throw DomainError("lognormal fit requires strictly positive data");
          log_jacobian += std::log(x);
          x = std::log(x);
        }
      }
      const double mu = mean_of(xs);
      const double sigma = population_sd(xs, mu);
      if (!(sigma > 0)) {
        throw DomainError("degenerate fit: data has zero spread (sigma = 0)");
      }
      m.parameters = {mu, sigma};
      m.log_likelihood =
          -0.5 * n * (std::log(2 * std::numbers::pi * sigma * sigma) + 1.0) - log_jacobian;
      break;
    }
    case Family::kUniform: {
      const auto [lo, hi] = std::minmax_element(data.values.begin(), data.values.end());
      if (!(*hi > *lo)) throw DomainError("degenerate fit: uniform needs max > min");
      m.parameters = {*lo, *hi};
      m.log_likelihood = -n * std::log(*hi - *lo);
      break;
    }
    case Family::kExplicit:
      throw DomainError("cannot fit an explicit family");
  }
  return m;
}

std::string model_to_json(const FittedModel& model) {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_name(model.family));
  if (model.family == Family::kUniform) {
    j["parameters"] = {{"low", model.parameters.at(0)}, {"high", model.parameters.at(1)}};
  } else {
    j["parameters"] = {{"mu", model.parameters.at(0)}, {"sigma", model.parameters.at(1)}};
  }
  j["n_observations"] = model.n_observations;
  return j.dump(2);
}

FittedModel model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model JSON: ") + e.what());
  }
  try {
    FittedModel m;
    m.family = parse_family(j.at("family").get<std::string>());
    const auto& p = j.at("parameters");
    if (m.family == Family::kUniform) {
      m.parameters = {p.at("low").get<double>(), p.at("high").get<double>()};
    } else if (m.family == Family::kExplicit) {
      throw ConfigError("fitted models cannot be explicit");
    } else {
      m.parameters = {p.at("mu").get<double>(), p.at("sigma").get<double>()};
    }
    m.n_observations = j.at("n_observations").get<std::size_t>();
    m.spec().validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model JSON: ") + e.what());
  }
}

double sample_model(const FittedModel& model, Rng& rng) {
  switch (model.family) {
    case Family::kGaussian: {
      std::normal_distribution<double> d(model.parameters.at(0), model.parameters.at(1));
      return d(rng);
    }
    case Family::kLognormal: {
      std::lognormal_distribution<double> d(model.parameters.at(0), model.parameters.at(1));
      return d(rng);
    }
    case Family::kUniform:
      return model.parameters.at(0) + (model.parameters.at(1) - model.parameters.at(0)) * uniform01(rng);
    case Family::kExplicit:
      break;
  }
  throw DomainError("cannot sample an explicit model");
}

double classical_mc(const FittedModel& model, const std::function<double(double)>& f,
                    std::uint64_t q, Rng& rng) {
  if (q < 1) throw DomainError("classical Monte Carlo needs q >= 1");
  model.spec().validate();
  NeumaierSum s;
  for (std::uint64_t i = 0; i < q; ++i) s.add(f(sample_model(model, rng)));
  return s.value() / static_cast<double>(q);
}

double classical_mc(const DiscretizedDistribution& dist, std::span<const double> values,
                    std::uint64_t q, Rng& rng) {
  if (q < 1) throw DomainError("classical Monte Carlo needs q >= 1");
  if (values.size() != dist.size()) throw ShapeError("values and distribution differ in length");
  std::vector<double> cumulative(dist.size());
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) cumulative[i] = (total += dist.probs[i]);
  std::size_t last = dist.size() - 1;
  while (last > 0 && dist.probs[last] <= 0) --last;
  NeumaierSum s;
  for (std::uint64_t i = 0; i < q; ++i) {
    const double u = uniform01(rng) * total;
    auto idx = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    s.add(values[std::min(idx, last)]);
  }
  return s.value() / static_cast<double>(q);
}

Expectation brute_force_expectation(const DiscretizedDistribution& dist, const BoundedFunction& f) {
  if (dist.size() != f.size()) {
    throw ShapeError("distribution has " + std::to_string(dist.size()) + " points, function has " +
                     std::to_string(f.size()));
  }
  NeumaierSum s, mass;
  for (std::size_t x = 0; x < dist.size(); ++x) {
    s.add(dist.probs[x] * f.normalized[x]);
    mass.add(dist.probs[x]);
  }
  Expectation e;
  e.normalized = s.value() / mass.value();
  e.value = f.is_constant() ? f.f_min : f.denormalize(e.normalized);
  return e;
}

}  // namespace qmci
