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

// Classical front end and baselines: dataset ingestion, maximum-likelihood
// model fitting, i.i.d. Monte Carlo, and the exact grid expectation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmci/dist_encode.h"
#include "qmci/func_oracle.h"
#include "qmci/rng.h"

namespace qmci {

struct Dataset {
  std::vector<double> values;
  std::string source_path;
};

/// One numeric value per line; a non-numeric first line is treated as a
/// header and blank lines are ignored. IoError if the file cannot be read;
/// DomainError listing the offending line numbers for any other non-numeric
/// row or when no rows remain.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in, std::string source_path);

/// gaussian/lognormal parameters are {mu, sigma}; uniform is {low, high}.
struct FittedModel {
  Family family = Family::kGaussian;
  std::vector<double> parameters;
  double log_likelihood = 0.0;
  std::size_t n_observations = 0;

  DistributionSpec spec() const;
};

/// Closed-form maximum likelihood. Sigma uses the population (1/N) form.
/// DomainError for degenerate data (zero spread) or non-positive data under
/// lognormal.
FittedModel fit_model(const Dataset& data, Family family);

/// {"family": ..., "parameters": {...}, "n_observations": ...}
std::string model_to_json(const FittedModel& model);
FittedModel model_from_json(std::string_view text);

/// Draws one value from the continuous fitted model.
double sample_model(const FittedModel& model, Rng& rng);

/// (1/q) sum f(X_i) with X_i i.i.d. from the continuous model.
double classical_mc(const FittedModel& model, const std::function<double(double)>& f,
                    std::uint64_t q, Rng& rng);

/// (1/q) sum values[X_i] with X_i i.i.d. from the discretized grid; unbiased
/// for brute_force_expectation.
double classical_mc(const DiscretizedDistribution& dist, std::span<const double> values,
                    std::uint64_t q, Rng& rng);

struct Expectation {
  double normalized = 0.0;  // sum_x p(x) g(x)
  double value = 0.0;       // denormalized E[f]
};

/// Compensated (Neumaier) sum of p(x) g(x). ShapeError on length mismatch.
Expectation brute_force_expectation(const DiscretizedDistribution& dist, const BoundedFunction& f);

}  // namespace qmci
