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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedpod/aggregation.hpp"
#include "fedpod/cohort.hpp"
#include "fedpod/data.hpp"
#include "fedpod/params.hpp"
#include "fedpod/schedule.hpp"
#include "fedpod/timing.hpp"

namespace fedpod {

enum class SelectionMode {
  kPoisson,  // primary/secondary tasks with quotas
  kFull,     // every institution, all of its data
};

struct StragglerPolicy {
  double timeout_factor = 3.0;
  // When false, slow nodes are waited for and always merged.
  bool drop = true;
  // node id -> multiplier on every timing component.
  std::map<std::string, double> slowdown;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;

  // Partition file to load; synthetic cohort otherwise.
  std::optional<std::filesystem::path> partition_csv;
  SyntheticCohortSpec synthetic;
  BlobSpec data;
  double holdout_fraction = 0.2;
  double local_val_fraction = 0.2;

  SelectionMode selection = SelectionMode::kPoisson;
  double z = 2.0;
  double margin_fraction = 0.1;

  AggregationStrategy strategy;
  Schedule schedule = default_schedule();
  std::size_t batch_size = 8;

  TimingModel timing;
  StragglerPolicy stragglers;

  double max_simulated_time_s = 7.0 * 24.0 * 3600.0;
  int max_rounds = 15;

  void validate() const;
};

inline constexpr std::size_t kReportedClasses = 3;

struct RoundRecord {
  int round_index = 0;
  int phase = 0;  // 1-based
  std::vector<std::string> participants;
  std::vector<std::string> dropped;
  // Merged nodes in node_id order with the weights used for them.
  std::vector<std::string> merged;
  std::vector<double> weights;
  std::map<std::string, TimingSample> timings;
  std::array<double, kReportedClasses> class_dice{};
  double mean_dice = 0.0;
  double best_dice = 0.0;
  double round_time_s = 0.0;
  double cumulative_time_s = 0.0;
  // Over this and every earlier record.
  double convergence_score = 0.0;
  bool derivative_fallback = false;
  bool integral_fallback = false;
  bool secondary_shortfall = false;
  int epochs = 0;
};

struct ExperimentSummary {
  double lambda = 0.0;
  double threshold = 0.0;
  std::vector<std::string> primary;
  std::vector<std::string> secondary;
  int rounds_completed = 0;
  double total_time_s = 0.0;
  double final_mean_dice = 0.0;
  double best_dice = 0.0;
  double convergence_score = 0.0;
};

struct ExperimentReport {
  std::vector<RoundRecord> records;
  ModelParams final_model;
  ExperimentSummary summary;
};

// Time-weighted mean of the running best mean Dice.
double convergence_score(std::span<const RoundRecord> records);

// Seed of the SGD stream a node uses in a given round.
std::uint64_t training_seed(std::uint64_t experiment_seed, int round_index, const std::string& node_id);

// Everything the round loop reads besides the config: the cohort, each
// institution's local validation shard and the global holdout.
struct ExperimentData {
  Cohort cohort;
  std::map<std::string, DataShard> local_validation;
  DataShard holdout;
};

ExperimentData prepare_data(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const ExperimentData& data);

}  // namespace fedpod
