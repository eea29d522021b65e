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
#include "fedpod/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>

#include "fedpod/errors.hpp"
#include "fedpod/metrics.hpp"
#include "fedpod/partition_io.hpp"
#include "fedpod/rng.hpp"
#include "fedpod/selection.hpp"
#include "fedpod/surrogate.hpp"

namespace fedpod {
namespace {

std::size_t fraction_of(double fraction, std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
}

// Runs task(i) for i in [0, n) on up to hardware_concurrency threads. The
// first failure in index order is rethrown after all tasks finish.
template <typename Task>
void parallel_for(std::size_t n, Task&& task) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!partition_csv) synthetic.validate();
  data.validate();
  if (data.num_classes != kReportedClasses + 1) {
    throw ValidationError("data.num_classes must be " + std::to_string(kReportedClasses + 1));
  }
  if (!(holdout_fraction > 0.0 && holdout_fraction <= 1.0)) {
    throw ValidationError("data.holdout_fraction must be in (0, 1]");
  }
  if (!(local_val_fraction > 0.0 && local_val_fraction <= 1.0)) {
    throw ValidationError("data.local_val_fraction must be in (0, 1]");
  }
  if (!std::isfinite(z)) throw ValidationError("selection.z must be finite");
  if (!(margin_fraction >= 0.0 && margin_fraction < 1.0)) {
    throw ValidationError("selection.margin must be in [0, 1)");
  }
  strategy.validate();
  if (max_rounds < 0) throw ValidationError("max_rounds must be >= 0");
  validate_schedule(schedule, max_rounds);
  if (batch_size < 1) throw ValidationError("train.batch_size must be >= 1");
  timing.validate();
  if (!(stragglers.timeout_factor > 1.0) || !std::isfinite(stragglers.timeout_factor)) {
    throw ValidationError("straggler.timeout_factor must be > 1");
  }
  for (const auto& [id, factor] : stragglers.slowdown) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
      throw ValidationError("straggler.inject: factor for '" + id + "' must be > 0");
    }
  }
  if (!(max_simulated_time_s > 0.0)) throw ValidationError("max_simulated_time_s must be > 0");
}

double convergence_score(std::span<const RoundRecord> records) {
  std::vector<double> best;
  std::vector<double> times;
  for (const auto& r : records) {
    best.push_back(r.best_dice);
    times.push_back(r.round_time_s);
  }
  return projected_convergence_score(best, times);
}

std::uint64_t training_seed(std::uint64_t experiment_seed, int round_index, const std::string& node_id) {
  return derive_seed(experiment_seed, {static_cast<std::uint64_t>(Stream::kTraining),
                                       static_cast<std::uint64_t>(round_index), hash_key(node_id)});
}

ExperimentData prepare_data(const ExperimentConfig& config) {
  config.validate();
  PartitionTable table = config.partition_csv ? load_partition_csv(*config.partition_csv)
                                              : synthetic_partition(config.synthetic, config.seed);
  const BlobGenerator blobs(config.data, derive_seed(config.seed, Stream::kBlobCenters));
  auto shards = synthesize_shards(table, blobs, config.seed);

  std::map<std::string, DataShard> local_validation;
  for (const auto& [id, samples] : table.entries()) {
    if (samples.empty()) continue;
    // Same site shift as the institution's training data.
    Rng site(derive_seed(config.seed, {static_cast<std::uint64_t>(Stream::kSiteData), hash_key(id)}));
    const auto shift = blobs.draw_site_shift(site);
    Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(Stream::kLocalValidation), hash_key(id)}));
    const std::size_t n = fraction_of(config.local_val_fraction, samples.size());
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < n; ++k) ids.push_back(id + "/val" + std::to_string(k));
    local_validation.emplace(id, blobs.sample(ids, shift, rng));
  }

  Rng rng(derive_seed(config.seed, Stream::kHoldout));
  const std::size_t n = fraction_of(config.holdout_fraction, table.total());
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < n; ++k) ids.push_back("holdout/" + std::to_string(k));
  DataShard holdout = blobs.sample(ids, {}, rng);

  return ExperimentData{Cohort{std::move(table), std::move(shards)}, std::move(local_validation),
                        std::move(holdout)};
}

ExperimentReport run_experiment(const ExperimentConfig& config) { return run_experiment(config, prepare_data(config)); }

ExperimentReport run_experiment(const ExperimentConfig& config, const ExperimentData& data) {
  config.validate();
  const PartitionTable& table = data.cohort.table;
  const PoissonModel poisson = fit_poisson(table);
  const NodeClassification classes = classify_nodes(table, poisson, config.z);
  const SelectionContext context{table, classes, poisson.lambda, config.margin_fraction};
  const SoftmaxClassifier clf = SoftmaxClassifier::for_shard(data.holdout);

  ExperimentReport report{.records = {}, .final_model = ModelParams::zeros(clf.param_dim()), .summary = {}};
  report.summary.lambda = poisson.lambda;
  report.summary.threshold = classes.threshold;
  report.summary.primary = classes.primary;
  report.summary.secondary = classes.secondary;

  CostHistory history;
  ShardCursor cursor;
  std::set<std::string> blacklist;
  double cumulative = 0.0;
  double best = 0.0;

  for (int round = 1; round <= config.max_rounds && cumulative < config.max_simulated_time_s; ++round) {
    const std::size_t phase_idx = phase_index(config.schedule, round);
    const PhaseEntry& phase = config.schedule[phase_idx];
    const TaskPlan plan = config.selection == SelectionMode::kPoisson
                              ? compose_task(round, context, phase, blacklist, cursor, config.seed)
                              : compose_full_task(round, table, blacklist);
    advance_cursor(cursor, plan, table);

    const ModelParams& global = report.final_model;
    std::vector<std::optional<LocalUpdate>> updates(plan.participants.size());
    try {
      parallel_for(plan.participants.size(), [&](std::size_t i) {
        const Participant& p = plan.participants[i];
        const DataShard& shard = data.cohort.shards.at(p.institution_id);
        const DataShard& val = data.local_validation.at(p.institution_id);
        const TrainConfig cfg{.epochs = phase.epochs,
                              .learning_rate = phase.learning_rate,
                              .seed = training_seed(config.seed, round, p.institution_id),
                              .batch_size = config.batch_size};
        if (p.shard_offset == 0 && p.quota == shard.size()) {
          updates[i] = train_local(global, shard, val, cfg, p.institution_id);
        } else {
          updates[i] = train_local(global, shard.window(p.shard_offset, p.quota), val, cfg, p.institution_id);
        }
      });
    } catch (const TrainingDivergenceError& e) {
      throw TrainingDivergenceError(e.node_id(), round, "round " + std::to_string(round) + ": " + e.what());
    }

    RoundRecord record;
    record.round_index = round;
    record.phase = static_cast<int>(phase_idx) + 1;
    record.epochs = phase.epochs;
    record.secondary_shortfall = plan.secondary_shortfall;

    std::vector<NodeTiming> timings;
    for (std::size_t i = 0; i < plan.participants.size(); ++i) {
      const Participant& p = plan.participants[i];
      Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(Stream::kTiming),
                                        static_cast<std::uint64_t>(round), hash_key(p.institution_id)}));
      const auto slow = config.stragglers.slowdown.find(p.institution_id);
      const double slowdown = slow == config.stragglers.slowdown.end() ? 1.0 : slow->second;
      updates[i]->timings = sample_timings(config.timing, p.quota, phase.epochs,
                                           data.local_validation.at(p.institution_id).size(), slowdown, rng);
      timings.emplace_back(p.institution_id, updates[i]->timings);
      record.participants.push_back(p.institution_id);
      record.timings.emplace(p.institution_id, updates[i]->timings);
    }

    const std::set<std::string> dropped =
        config.stragglers.drop ? detect_stragglers(timings, config.stragglers.timeout_factor)
                               : std::set<std::string>{};
    std::vector<LocalUpdate> kept;
    std::vector<TimingSample> kept_timings;
    for (auto& u : updates) {
      if (dropped.contains(u->node_id)) continue;
      kept_timings.push_back(u->timings);
      kept.push_back(std::move(*u));
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.node_id < b.node_id; });

    const MergeWeights weights = strategy_weights(kept, history, config.strategy);
    report.final_model = aggregate(kept, weights.weights);
    history.record(kept);

    const auto predicted = clf.predict(report.final_model, data.holdout);
    double dice_sum = 0.0;
    for (std::size_t c = 0; c < kReportedClasses; ++c) {
      record.class_dice[c] = dice_score(predicted, data.holdout.labels(), static_cast<int>(c + 1));
      dice_sum += record.class_dice[c];
    }
    record.mean_dice = dice_sum / static_cast<double>(kReportedClasses);
    best = report.records.empty() ? record.mean_dice : std::max(best, record.mean_dice);
    record.best_dice = best;

    record.round_time_s = round_time(kept_timings);
    cumulative += record.round_time_s;
    record.cumulative_time_s = cumulative;
    record.dropped.assign(dropped.begin(), dropped.end());
    for (const auto& u : kept) record.merged.push_back(u.node_id);
    record.weights = weights.weights;
    record.derivative_fallback = weights.derivative_fallback;
    record.integral_fallback = weights.integral_fallback;
    report.records.push_back(std::move(record));
    report.records.back().convergence_score = convergence_score(report.records);

    // Dropped nodes sit out exactly one round.
    blacklist = dropped;
  }

  auto& s = report.summary;
  s.rounds_completed = static_cast<int>(report.records.size());
  s.total_time_s = cumulative;
  if (!report.records.empty()) {
    s.final_mean_dice = report.records.back().mean_dice;
    s.best_dice = report.records.back().best_dice;
    s.convergence_score = convergence_score(report.records);
  }
  return report;
}

}  // namespace fedpod
