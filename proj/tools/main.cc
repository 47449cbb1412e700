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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "qmci/error.h"

namespace {

using qmci::cli::Json;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> threads;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool config_required) {
  auto* opt = app->add_option("--config", c.config_path, "JSON config file");
  if (config_required) opt->required();
  app->add_option("--seed", c.seed, "RNG seed (overrides config)");
  app->add_option("--threads", c.threads, "worker threads (overrides config)");
  app->add_option("--out", c.out, "output file (overrides config; default stdout)");
}

Json config_of(const Common& c) {
  Json config = c.config_path.empty() ? Json::object() : qmci::cli::load_config(c.config_path);
  if (!config.is_object()) throw qmci::ConfigError("config must be a JSON object");
  if (c.seed) config["seed"] = *c.seed;
  if (c.threads) config["threads"] = *c.threads;
  if (!c.out.empty()) config["out"] = c.out;
  return config;
}

void emit(const Json& config, const std::string& payload) {
  const auto it = config.find("out");
  if (it == config.end()) {
    std::cout << payload;
    return;
  }
  if (!it->is_string()) throw qmci::ConfigError("out must be a string");
  std::ofstream f(it->get<std::string>());
  if (!f) throw qmci::IoError("cannot write " + it->get<std::string>());
  f << payload;
}

int exit_code(const qmci::Error& e) {
  if (dynamic_cast<const qmci::CapacityError*>(&e)) return 3;
  if (dynamic_cast<const qmci::IoError*>(&e)) return 4;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Monte Carlo integration toolkit"};
  app.require_subcommand(1);

  Common est_opts, conv_opts, grover_opts, fit_opts;
  auto* estimate = app.add_subcommand("estimate", "Estimate E[f(X)] with one method");
  add_common(estimate, est_opts, true);

  auto* converge = app.add_subcommand("converge", "MSE versus oracle calls, written as CSV");
  add_common(converge, conv_opts, true);

  std::string slope_csv;
  auto* slope = app.add_subcommand("slope", "Fit log-log slopes to a convergence CSV");
  slope->add_option("csv", slope_csv, "convergence CSV")->required();

  std::optional<std::uint64_t> grover_n, grover_marked, grover_shots;
  auto* grover = app.add_subcommand("grover-demo", "Grover search on a single marked item");
  add_common(grover, grover_opts, false);
  grover->add_option("--n", grover_n, "number of qubits");
  grover->add_option("--marked", grover_marked, "marked basis index");
  grover->add_option("--shots", grover_shots, "measurement shots");

  std::string fit_data, fit_family = "gaussian";
  auto* fit = app.add_subcommand("fit", "Fit a distribution to a CSV column");
  add_common(fit, fit_opts, false);
  fit->add_option("--data", fit_data, "CSV file of observations");
  fit->add_option("--family", fit_family, "gaussian, lognormal or uniform");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*estimate) {
      const Json config = config_of(est_opts);
      emit(config, qmci::cli::cmd_estimate(config).dump(2) + "\n");
    } else if (*converge) {
      const Json config = config_of(conv_opts);
      std::ostringstream csv;
      qmci::cli::write_convergence_csv(csv, qmci::cli::cmd_converge(config));
      emit(config, csv.str());
    } else if (*slope) {
      std::cout << qmci::cli::cmd_slope(slope_csv).dump(2) << "\n";
    } else if (*grover) {
      Json config = config_of(grover_opts);
      if (grover_n) config["n_qubits"] = *grover_n;
      if (grover_marked) config["marked"] = *grover_marked;
      if (grover_shots) config["shots"] = *grover_shots;
      emit(config, qmci::cli::cmd_grover_demo(config).dump(2) + "\n");
    } else if (*fit) {
      Json config = config_of(fit_opts);
      if (!fit_data.empty()) config["dataset"] = {{"path", fit_data}, {"family", fit_family}};
      emit(config, qmci::cli::cmd_fit(config).dump(2) + "\n");
    }
  } catch (const qmci::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
