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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fedpod/aggregation.hpp"
#include "fedpod/errors.hpp"

namespace fedpod {
namespace {

LocalUpdate make_update(std::string id, std::size_t size, double pre, double post,
                        std::vector<double> params = {0.0}) {
  return LocalUpdate{.node_id = std::move(id),
                     .params = ModelParams(std::move(params)),
                     .data_size = size,
                     .pre_cost = pre,
                     .post_cost = post,
                     .trajectory = CostTrajectory::linear(pre, post),
                     .timings = {}};
}

std::vector<LocalUpdate> random_updates(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> size(1, 500);
  std::uniform_real_distribution<double> cost(0.05, 2.5);
  std::uniform_int_distribution<int> points(2, 6);
  std::vector<LocalUpdate> out;
  for (std::size_t j = 0; j < n; ++j) {
    const double pre = cost(rng);
    std::vector<CostTrajectory::Sample> samples = {{0.0, pre}};
    const int extra = points(rng);
    for (int k = 1; k < extra; ++k) samples.push_back({static_cast<double>(k) / extra, cost(rng)});
    samples.push_back({1.0, cost(rng)});
    const double post = samples.back().cost;
    out.push_back(LocalUpdate{.node_id = "node" + std::to_string(j),
                              .params = ModelParams({static_cast<double>(j)}),
                              .data_size = size(rng),
                              .pre_cost = pre,
                              .post_cost = post,
                              .trajectory = CostTrajectory(std::move(samples)),
                              .timings = {}});
  }
  return out;
}

AggregationStrategy coefficients(StrategyKind kind, double a, double b, double g) {
  return AggregationStrategy{.kind = kind, .alpha = a, .beta = b, .gamma = g, .history_window = 6};
}

TEST(FedAvgWeightsTest, Examples) {
  EXPECT_EQ(fedavg_weights(std::vector{make_update("a", 10, 1, 1)}).weights, std::vector<double>{1.0});
  EXPECT_EQ(fedavg_weights(std::vector{make_update("a", 1, 1, 1), make_update("b", 3, 1, 1)}).weights,
            (std::vector<double>{0.25, 0.75}));
  const auto w = fedavg_weights(
      std::vector{make_update("a", 2, 1, 1), make_update("b", 3, 1, 1), make_update("c", 5, 1, 1)});
  EXPECT_NEAR(w.weights[0], 0.2, 1e-15);
  EXPECT_NEAR(w.weights[1], 0.3, 1e-15);
  EXPECT_NEAR(w.weights[2], 0.5, 1e-15);
}

TEST(FedPidWeightsTest, DerivativeOnlyExample) {
  const std::vector updates = {make_update("a", 5, 1.0, 0.5), make_update("b", 5, 1.0, 0.9)};
  CostHistory history;
  history.record("a", 1.0);
  history.record("b", 1.0);
  const auto w = fedpid_weights(updates, history, coefficients(StrategyKind::kFedPIDAvg, 0, 1, 0));
  EXPECT_NEAR(w.weights[0], 0.5 / 0.6, 1e-12);
  EXPECT_NEAR(w.weights[1], 0.1 / 0.6, 1e-12);
}

TEST(FedPidWeightsTest, IntegralUsesWindow) {
  const std::vector updates = {make_update("a", 1, 1.0, 1.0), make_update("b", 1, 1.0, 1.0)};
  CostHistory history;
  for (double c : {9.0, 9.0, 2.0}) history.record("a", c);
  history.record("b", 1.0);
  AggregationStrategy s = coefficients(StrategyKind::kFedPIDAvg, 0, 0, 1);
  s.history_window = 2;
  // m_a = 1 + 2, m_b = 1 + 1
  const auto w = fedpid_weights(updates, history, s);
  EXPECT_NEAR(w.weights[0], 3.0 / 5.0, 1e-12);
  EXPECT_NEAR(w.weights[1], 2.0 / 5.0, 1e-12);
}

TEST(FedPidWeightsTest, SingleNodeIsOne) {
  const std::vector updates = {make_update("a", 5, 1.0, 0.5)};
  EXPECT_NEAR(fedpid_weights(updates, {}, AggregationStrategy{}).weights[0], 1.0, 1e-15);
}

TEST(FedPodWeightsTest, WorkedExample) {
  const std::vector updates = {make_update("a", 3, 1.0, 0.5), make_update("b", 1, 1.0, 0.9)};
  const auto w = fedpod_weights(updates, coefficients(StrategyKind::kFedPOD, 0.2, 0.7, 0.1));
  // p = {3/4, 1/4}; k = {0.375, 0.025}, K = 0.4; m = {0.5625, 0.2375}, I = 0.8
  const double w0 = 0.2 * 0.75 + 0.7 * 0.375 / 0.4 + 0.1 * 0.5625 / 0.8;
  const double w1 = 0.2 * 0.25 + 0.7 * 0.025 / 0.4 + 0.1 * 0.2375 / 0.8;
  EXPECT_NEAR(w.weights[0], w0, 1e-12);
  EXPECT_NEAR(w.weights[1], w1, 1e-12);
  EXPECT_NEAR(w.weights[0], 0.8765625, 1e-12);
  EXPECT_FALSE(w.any_fallback());
}

TEST(FedPodWeightsTest, IdenticalUpdatesShareEqually) {
  std::vector<LocalUpdate> updates;
  for (int j = 0; j < 7; ++j) updates.push_back(make_update("n" + std::to_string(j), 10, 1.0, 0.4));
  for (double w : fedpod_weights(updates, AggregationStrategy{}).weights) EXPECT_NEAR(w, 1.0 / 7.0, 1e-15);
}

TEST(ReductionTest, ProportionalOnlyEqualsFedAvg) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto updates = random_updates(rng, 1 + trial % 12);
    const auto base = fedavg_weights(updates).weights;
    const auto pod = fedpod_weights(updates, coefficients(StrategyKind::kFedPOD, 1, 0, 0)).weights;
    const auto pid = fedpid_weights(updates, {}, coefficients(StrategyKind::kFedPIDAvg, 1, 0, 0)).weights;
    for (std::size_t j = 0; j < base.size(); ++j) {
      EXPECT_LE(std::abs(pod[j] - base[j]), 1e-12);
      EXPECT_LE(std::abs(pid[j] - base[j]), 1e-12);
    }
  }
}

TEST(NormalizationTest, RandomSetsSumToOne) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto updates = random_updates(rng, 1 + trial % 12);
    for (const auto& w : {fedavg_weights(updates), fedpid_weights(updates, {}, AggregationStrategy{}),
                          fedpod_weights(updates, AggregationStrategy{})}) {
      const double sum = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(PermutationTest, WeightsFollowTheirNodes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto updates = random_updates(rng, 2 + trial % 10);
    const auto before = fedpod_weights(updates, AggregationStrategy{}).weights;
    std::vector<std::size_t> order(updates.size());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<LocalUpdate> shuffled;
    for (auto i : order) shuffled.push_back(updates[i]);
    const auto after = fedpod_weights(shuffled, AggregationStrategy{}).weights;
    for (std::size_t j = 0; j < order.size(); ++j) EXPECT_EQ(after[j], before[order[j]]);
  }
}

TEST(HistoryIndependenceTest, FedPodIgnoresHistory) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto updates = random_updates(rng, 1 + trial % 12);
    CostHistory history;
    for (const auto& u : updates) history.record(u.node_id, 3.0 * u.post_cost);
    const AggregationStrategy s{};
    EXPECT_EQ(strategy_weights(updates, {}, s).weights, strategy_weights(updates, history, s).weights);
  }
}

TEST(MonotonicityTest, LargerCostDropMeansLargerWeight) {
  const auto s = coefficients(StrategyKind::kFedPOD, 0.2, 0.7, 0.1);
  const double low = fedpod_weights(std::vector{make_update("a", 5, 1.0, 0.8), make_update("b", 5, 1.0, 0.8)}, s)
                         .weights[0];
  const double high = fedpod_weights(std::vector{make_update("a", 5, 1.0, 0.3), make_update("b", 5, 1.0, 0.8)}, s)
                          .weights[0];
  EXPECT_GT(high, low);
}

TEST(FallbackTest, NoImprovementMovesMassToAlpha) {
  const std::vector updates = {make_update("a", 1, 0.5, 0.5), make_update("b", 3, 0.5, 0.5)};
  const auto w = fedpod_weights(updates, AggregationStrategy{});
  EXPECT_TRUE(w.derivative_fallback);
  EXPECT_FALSE(w.integral_fallback);
  // (0.2 + 0.7) * s / S + 0.1 * m / I, with m proportional to s here
  EXPECT_NEAR(w.weights[0], 0.25, 1e-12);
  EXPECT_NEAR(w.weights[1], 0.75, 1e-12);
}

TEST(FallbackTest, ZeroCoefficientIsNotFlagged) {
  const std::vector updates = {make_update("a", 1, 0.5, 0.5), make_update("b", 3, 0.5, 0.5)};
  EXPECT_FALSE(fedpod_weights(updates, coefficients(StrategyKind::kFedPOD, 0.9, 0, 0.1)).any_fallback());
}

TEST(StrategyTest, ValidationAndNames) {
  EXPECT_THROW(coefficients(StrategyKind::kFedPOD, 0.5, 0.5, 0.5).validate(), ValidationError);
  EXPECT_THROW(coefficients(StrategyKind::kFedPOD, -0.1, 0.6, 0.5).validate(), ValidationError);
  EXPECT_EQ(parse_strategy_kind("FEDPOD"), StrategyKind::kFedPOD);
  EXPECT_EQ(parse_strategy_kind("FedPIDAvg"), StrategyKind::kFedPIDAvg);
  EXPECT_EQ(parse_strategy_kind("fedavg"), StrategyKind::kFedAvg);
  EXPECT_THROW(parse_strategy_kind("fedprox"), ValidationError);
}

TEST(AggregateTest, Examples) {
  const std::vector single = {make_update("a", 1, 1, 1, {3, 4})};
  EXPECT_EQ(aggregate(single, std::vector{1.0}), ModelParams({3, 4}));
  const std::vector pair = {make_update("a", 1, 1, 1, {0, 0}), make_update("b", 1, 1, 1, {2, 4})};
  EXPECT_EQ(aggregate(pair, std::vector{0.5, 0.5}), ModelParams({1, 2}));
  const std::vector same = {make_update("a", 1, 1, 1, {1.5, -2}), make_update("b", 1, 1, 1, {1.5, -2})};
  const auto out = aggregate(same, std::vector{0.3, 0.7});
  EXPECT_NEAR(out[0], 1.5, 1e-15);
  EXPECT_NEAR(out[1], -2.0, 1e-15);
}

TEST(AggregateTest, RejectsBadWeights) {
  const std::vector pair = {make_update("a", 1, 1, 1), make_update("b", 1, 1, 1)};
  EXPECT_THROW(aggregate(pair, std::vector{0.5, 0.6}), ValidationError);
  EXPECT_THROW(aggregate(pair, std::vector{1.0}), StructuralError);
  EXPECT_NO_THROW(aggregate(pair, std::vector{1.5, -0.5}));
}

}  // namespace
}  // namespace fedpod
