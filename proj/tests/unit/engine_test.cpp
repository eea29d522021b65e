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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "fedpod/engine.hpp"
#include "fedpod/errors.hpp"
#include "fedpod/report_io.hpp"
#include "fedpod/surrogate.hpp"

namespace fedpod {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.seed = 3;
  c.max_rounds = 6;
  c.max_simulated_time_s = 1e12;
  return c;
}

// Enough large institutions that six primaries are always available.
ExperimentConfig table_config() {
  ExperimentConfig c;
  c.seed = 5;
  c.synthetic.outliers = 10;
  c.max_simulated_time_s = 1e12;
  return c;
}

std::string metrics_csv(const ExperimentReport& r) {
  std::ostringstream out;
  write_metrics_csv(r, out);
  return out.str();
}

TEST(EngineTest, ZeroRoundsLeavesModelUntouched) {
  ExperimentConfig c = small_config();
  c.max_rounds = 0;
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.records.empty());
  for (double v : r.final_model.values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.summary.rounds_completed, 0);
}

TEST(EngineTest, SingleNodeFedAvgIsSequentialTraining) {
  ExperimentConfig c = small_config();
  c.synthetic = {.institutions = 1, .lambda = 40.0, .outliers = 0, .outlier_scale = 1.0};
  c.selection = SelectionMode::kFull;
  c.strategy.kind = StrategyKind::kFedAvg;
  const auto data = prepare_data(c);
  const auto report = run_experiment(c, data);
  ASSERT_EQ(report.records.size(), 6u);

  const auto& [id, shard] = *data.cohort.shards.begin();
  ModelParams model = ModelParams::zeros(SoftmaxClassifier::for_shard(shard).param_dim());
  for (int round = 1; round <= c.max_rounds; ++round) {
    const auto& phase = c.schedule[phase_index(c.schedule, round)];
    const TrainConfig cfg{.epochs = phase.epochs,
                          .learning_rate = phase.learning_rate,
                          .seed = training_seed(c.seed, round, id),
                          .batch_size = c.batch_size};
    model = train_local(model, shard, data.local_validation.at(id), cfg, id).params;
  }
  EXPECT_EQ(report.final_model, model);
}

TEST(EngineTest, FollowsPhaseSchedule) {
  const auto r = run_experiment(table_config());
  ASSERT_EQ(r.records.size(), 15u);
  for (const auto& rec : r.records) {
    const int expected_nodes = rec.round_index <= 5 ? 6 : rec.round_index <= 10 ? 8 : 10;
    const int expected_epochs = rec.round_index <= 10 ? 4 : 3;
    EXPECT_EQ(static_cast<int>(rec.participants.size()), expected_nodes) << rec.round_index;
    EXPECT_EQ(rec.epochs, expected_epochs);
  }
}

TEST(EngineTest, Deterministic) {
  const auto c = small_config();
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  EXPECT_EQ(metrics_csv(a), metrics_csv(b));
  EXPECT_EQ(a.final_model, b.final_model);
}

TEST(EngineTest, RecordInvariants) {
  const auto r = run_experiment(table_config());
  double best = 0.0, cumulative = 0.0;
  for (const auto& rec : r.records) {
    EXPECT_GE(rec.best_dice, best);
    EXPECT_GE(rec.best_dice, rec.mean_dice);
    best = rec.best_dice;
    cumulative += rec.round_time_s;
    EXPECT_DOUBLE_EQ(rec.cumulative_time_s, cumulative);
    EXPECT_EQ(rec.merged.size(), rec.weights.size());
    EXPECT_EQ(rec.merged.size() + rec.dropped.size(), rec.participants.size());
    EXPECT_TRUE(std::is_sorted(rec.merged.begin(), rec.merged.end()));
    double sum = 0.0;
    for (double w : rec.weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  EXPECT_DOUBLE_EQ(r.summary.convergence_score, convergence_score(r.records));
  EXPECT_NEAR(r.records.back().convergence_score, r.summary.convergence_score, 1e-12);
}

TEST(EngineTest, StrategyDoesNotChangeRoundTimes) {
  ExperimentConfig pod = small_config();
  ExperimentConfig avg = pod;
  avg.strategy.kind = StrategyKind::kFedAvg;
  const auto a = run_experiment(pod);
  const auto b = run_experiment(avg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].round_time_s, b.records[i].round_time_s);
  }
}

TEST(EngineTest, StopsOnceBudgetIsSpent) {
  ExperimentConfig c = small_config();
  c.max_rounds = 15;
  const auto full = run_experiment(c);
  c.max_simulated_time_s = full.records[2].cumulative_time_s;
  const auto cut = run_experiment(c);
  EXPECT_EQ(cut.records.size(), 3u);
}

TEST(EngineTest, InjectedStragglerIsDroppedAndSitsOut) {
  ExperimentConfig c = table_config();
  c.max_rounds = 3;
  const auto base = run_experiment(c);
  const std::string victim = base.records[0].participants[0];
  c.stragglers.slowdown[victim] = 10.0;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.records[0].dropped, std::vector<std::string>{victim});
  const auto& next = r.records[1].participants;
  EXPECT_EQ(std::find(next.begin(), next.end(), victim), next.end());
  EXPECT_LT(r.records[0].round_time_s, 10.0 * base.records[0].round_time_s);
}

TEST(EngineTest, InvalidConfigRejected) {
  ExperimentConfig c = small_config();
  c.strategy.alpha = 0.5;
  EXPECT_THROW(run_experiment(c), ValidationError);
}

}  // namespace
}  // namespace fedpod
