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
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fedpod/aggregation.hpp"
#include "fedpod/engine.hpp"

namespace fedpod::cli {

struct RunManifest {
  std::optional<std::filesystem::path> config_path;
  ExperimentConfig config;
  std::filesystem::path output_dir;
  std::vector<std::filesystem::path> artifacts;
};

// Applies FEDPOD_SEED when set.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path);

// metrics.csv, summary.txt, model.bin and manifest.txt under output_dir.
ExperimentReport run(RunManifest& manifest);

// One run per strategy in <out>/<strategy>/ plus comparison.csv joined on
// round.
std::vector<ExperimentReport> compare(RunManifest& manifest, const std::vector<StrategyKind>& strategies);

// Per strategy: <name>_mean_dice.csv, <name>_label_dice.csv and
// <name>_convergence.csv.
void plot_data(RunManifest& manifest, const std::vector<StrategyKind>& strategies);

std::vector<StrategyKind> parse_strategy_list(const std::string& csv);

}  // namespace fedpod::cli
