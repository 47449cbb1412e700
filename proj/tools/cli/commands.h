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

// Subcommand implementations behind the qmci executable. Every command is a
// pure function of its JSON config (seed included).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmci/data_pipeline.h"
#include "qmci/dist_encode.h"
#include "qmci/fourier_qmci.h"
#include "qmci/func_oracle.h"

namespace qmci::cli {

using Json = nlohmann::ordered_json;

/// Distribution, grid function and provenance shared by estimate/converge.
struct ProblemSetup {
  DistributionSpec spec;
  std::optional<FittedModel> fitted;
  Integrand integrand;
  DiscretizedDistribution dist;
  BoundedFunction function;
  Expectation truth;
};

/// Builds the setup from the "model"/"dataset", "n_qubits", "range" and
/// "integrand" keys, filling defaults (gaussian(0,1), 6 qubits, relu(0)).
ProblemSetup build_setup(const Json& config);

Json cmd_estimate(const Json& config);

struct ConvergenceRow {
  std::string method;
  std::uint64_t q = 0;
  std::uint64_t trials = 0;
  double mse = 0.0;
  double truth = 0.0;
};

std::vector<ConvergenceRow> cmd_converge(const Json& config);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> read_convergence_csv(std::istream& in);

struct SlopeFit {
  std::string method;
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(mse) on log(q), per method in first-seen
/// order. Rows with mse == 0 are skipped; DomainError if a method keeps
/// fewer than five rows.
std::vector<SlopeFit> fit_slopes(const std::vector<ConvergenceRow>& rows);
Json cmd_slope(const std::string& csv_path);

Json cmd_grover_demo(const Json& config);
Json cmd_fit(const Json& config);

/// Throws ConfigError naming the first key of `object` not in `allowed`, or
/// if `object` is not a JSON object.
void check_keys(const Json& object, std::initializer_list<const char*> allowed,
                const std::string& where);

Json load_config(const std::string& path);

}  // namespace qmci::cli
