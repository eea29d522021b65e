// Copyright 2026 The fedpod-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fedpod/cohort.hpp"
#include "fedpod/commands.hpp"
#include "fedpod/errors.hpp"
#include "fedpod/partition_io.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::optional<std::filesystem::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated learning round simulator (FedAvg, FedPIDAvg, FedPOD)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string strategies = "fedavg,fedpidavg,fedpod";

  auto* run = app.add_subcommand("run", "Run one experiment and write its metrics");
  run->add_option("--config", config_path, "Experiment config file")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* compare = app.add_subcommand("compare", "Run one experiment per strategy on the same cohort and seed");
  compare->add_option("--config", config_path, "Experiment config file")->check(CLI::ExistingFile);
  compare->add_option("--strategies", strategies, "Comma-separated strategy names");
  compare->add_option("--out", out_dir, "Output directory")->required();

  fedpod::SyntheticCohortSpec cohort;
  std::uint64_t cohort_seed = 0;
  std::string cohort_out;
  auto* gen = app.add_subcommand("gen-cohort", "Write a synthetic skewed partition CSV");
  gen->add_option("--institutions", cohort.institutions, "Number of institutions");
  gen->add_option("--lambda", cohort.lambda, "Poisson mean of regular institutions");
  gen->add_option("--outliers", cohort.outliers, "Number of high-count institutions");
  gen->add_option("--outlier-scale", cohort.outlier_scale, "Mean multiplier for outliers");
  gen->add_option("--seed", cohort_seed, "Random seed");
  gen->add_option("--out", cohort_out, "Output CSV path")->required();

  auto* plot = app.add_subcommand("plot-data", "Write per-strategy Dice and convergence series");
  plot->add_option("--config", config_path, "Experiment config file")->check(CLI::ExistingFile);
  plot->add_option("--strategies", strategies, "Comma-separated strategy names");
  plot->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen) {
      const auto table = fedpod::synthetic_partition(cohort, cohort_seed);
      fedpod::write_partition_csv(table, std::filesystem::path(cohort_out));
      std::cout << "wrote " << table.size() << " institutions, " << table.total() << " samples to " << cohort_out
                << '\n';
      return 0;
    }

    fedpod::cli::RunManifest manifest{optional_path(config_path), {}, out_dir, {}};
    manifest.config = fedpod::cli::load_config(manifest.config_path);

    if (*run) {
      const auto report = fedpod::cli::run(manifest);
      std::cout << "rounds " << report.summary.rounds_completed << ", best dice " << report.summary.best_dice
                << ", convergence score " << report.summary.convergence_score << '\n';
    } else if (*compare) {
      const auto kinds = fedpod::cli::parse_strategy_list(strategies);
      const auto reports = fedpod::cli::compare(manifest, kinds);
      for (std::size_t i = 0; i < kinds.size(); ++i) {
        std::cout << fedpod::to_string(kinds[i]) << ": convergence score " << reports[i].summary.convergence_score
                  << ", best dice " << reports[i].summary.best_dice << '\n';
      }
    } else if (*plot) {
      fedpod::cli::plot_data(manifest, fedpod::cli::parse_strategy_list(strategies));
    }
    for (const auto& artifact : manifest.artifacts) std::cout << artifact.string() << '\n';
  } catch (const fedpod::ValidationError& e) {
    std::cerr << "fedpod: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "fedpod: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
