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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fedpod/data.hpp"
#include "fedpod/errors.hpp"
#include "fedpod/surrogate.hpp"

namespace fedpod {
namespace {

// Two well separated classes on the first axis.
DataShard separable_shard(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.3);
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    features.push_back((y == 0 ? -2.0 : 2.0) + g(rng));
    features.push_back(g(rng));
    labels.push_back(y);
    ids.push_back("s" + std::to_string(i));
  }
  return DataShard(2, 2, std::move(features), std::move(labels), std::move(ids));
}

// Per-sample cross-entropy written out directly, no shared helpers.
double oracle_cost(const std::vector<double>& w, const DataShard& shard) {
  const std::size_t C = shard.num_classes();
  const std::size_t D = shard.feature_dim();
  double total = 0.0;
  for (std::size_t i = 0; i < shard.size(); ++i) {
    std::vector<double> z(C);
    for (std::size_t c = 0; c < C; ++c) {
      z[c] = w[C * D + c];
      for (std::size_t d = 0; d < D; ++d) z[c] += w[c * D + d] * shard.features(i)[d];
    }
    double denom = 0.0;
    for (double v : z) denom += std::exp(v);
    total += -std::log(std::exp(z[shard.label(i)]) / denom);
  }
  return total / static_cast<double>(shard.size());
}

TEST(EvaluateCostTest, UniformModelTwoClasses) {
  const auto shard = separable_shard(10, 1);
  EXPECT_NEAR(evaluate_cost(ModelParams::zeros(6), shard), std::log(2.0), 1e-15);
}

TEST(EvaluateCostTest, UniformModelFourClasses) {
  const BlobGenerator blobs(BlobSpec{}, 3);
  Rng rng(4);
  const std::vector<std::string> ids = {"a", "b", "c", "d", "e"};
  const auto shard = blobs.sample(ids, {}, rng);
  EXPECT_NEAR(evaluate_cost(ModelParams::zeros(4 * 9), shard), std::log(4.0), 1e-15);
}

TEST(EvaluateCostTest, MatchesPerSampleOracle) {
  const BlobGenerator blobs(BlobSpec{}, 5);
  Rng rng(6);
  std::vector<std::string> ids;
  for (int i = 0; i < 40; ++i) ids.push_back(std::to_string(i));
  const auto shard = blobs.sample(ids, {}, rng);
  std::vector<double> w(36);
  std::mt19937_64 wr(9);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (auto& v : w) v = u(wr);
  EXPECT_NEAR(evaluate_cost(ModelParams(w), shard), oracle_cost(w, shard), 1e-12);
}

TEST(EvaluateCostTest, RejectsWrongDimension) {
  const auto shard = separable_shard(4, 1);
  EXPECT_THROW(evaluate_cost(ModelParams::zeros(5), shard), StructuralError);
}

TEST(TrainConfigTest, RejectsZeroEpochs) {
  EXPECT_THROW((TrainConfig{.epochs = 0}.validate()), ValidationError);
}

TEST(TrainConfigTest, RejectsZeroLearningRate) {
  EXPECT_THROW((TrainConfig{.epochs = 1, .learning_rate = 0.0}.validate()), ValidationError);
}

TEST(TrainLocalTest, ReducesCostAndIsDeterministic) {
  const auto shard = separable_shard(40, 2);
  const auto val = separable_shard(20, 3);
  const TrainConfig cfg{.epochs = 4, .learning_rate = 1e-3, .seed = 42, .batch_size = 8};
  const auto a = train_local(ModelParams::zeros(6), shard, val, cfg, "n1");
  const auto b = train_local(ModelParams::zeros(6), shard, val, cfg, "n1");
  EXPECT_LT(a.post_cost, a.pre_cost);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.data_size, 40u);
  EXPECT_EQ(a.node_id, "n1");
}

TEST(TrainLocalTest, TrajectoryEndpointsMatchCosts) {
  const auto shard = separable_shard(30, 2);
  const auto val = separable_shard(10, 3);
  const auto u = train_local(ModelParams::zeros(6), shard, val, {.epochs = 3, .seed = 1});
  ASSERT_EQ(u.trajectory.samples().size(), 4u);
  EXPECT_EQ(u.trajectory.first_cost(), u.pre_cost);
  EXPECT_EQ(u.trajectory.last_cost(), u.post_cost);
  EXPECT_EQ(u.trajectory.samples().front().fraction, 0.0);
  EXPECT_EQ(u.trajectory.samples().back().fraction, 1.0);
  EXPECT_DOUBLE_EQ(u.post_cost, evaluate_cost(u.params, val));
}

TEST(TrainLocalTest, FullBatchStepMatchesGradientOracle) {
  const auto shard = separable_shard(12, 8);
  const double lr = 0.05;
  std::vector<double> w = {0.1, -0.2, 0.3, 0.05, -0.1, 0.2};
  const auto u = train_local(ModelParams(w), shard, shard, {.epochs = 1, .learning_rate = lr, .seed = 3,
                                                            .batch_size = 64});
  // One full-batch gradient step by finite differences of the oracle cost.
  std::vector<double> expected = w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double h = 1e-6;
    auto plus = w, minus = w;
    plus[i] += h;
    minus[i] -= h;
    expected[i] -= lr * (oracle_cost(plus, shard) - oracle_cost(minus, shard)) / (2 * h);
  }
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(u.params[i], expected[i], 1e-8);
}

TEST(TrainLocalTest, DivergenceIsReported) {
  // Feature magnitudes that overflow the first update.
  const DataShard shard(2, 2, {1e200, 1e200, -1e200, 1e200}, {0, 1}, {"a", "b"});
  try {
    train_local(ModelParams::zeros(6), shard, shard, {.epochs = 1, .learning_rate = 1e200, .seed = 1}, "x");
    FAIL() << "expected divergence";
  } catch (const TrainingDivergenceError& e) {
    EXPECT_EQ(e.node_id(), "x");
  }
}

TEST(SoftmaxClassifierTest, TiesGoToLowestClass) {
  const auto shard = separable_shard(6, 1);
  const SoftmaxClassifier clf(2, 2);
  for (int p : clf.predict(ModelParams::zeros(6), shard)) EXPECT_EQ(p, 0);
}

TEST(CostTrajectoryTest, LinearIntegralIsMidpoint) {
  EXPECT_DOUBLE_EQ(CostTrajectory::linear(1.0, 0.5).integral(), 0.75);
  EXPECT_THROW(CostTrajectory({{0.0, 1.0}}), ValidationError);
  EXPECT_THROW(CostTrajectory({{0.0, 1.0}, {0.5, 0.4}}), ValidationError);
}

TEST(DataShardTest, WindowWraps) {
  const auto shard = separable_shard(5, 1);
  const auto w = shard.window(3, 4);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w.sample_ids()[0], "s3");
  EXPECT_EQ(w.sample_ids()[1], "s4");
  EXPECT_EQ(w.sample_ids()[2], "s0");
  EXPECT_EQ(w.sample_ids()[3], "s1");
}

}  // namespace
}  // namespace fedpod
