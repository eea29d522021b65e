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

#include <random>
#include <vector>

#include "fedpod/engine.hpp"
#include "fedpod/errors.hpp"
#include "fedpod/metrics.hpp"

namespace fedpod {
namespace {

TEST(DiceTest, PerfectPrediction) {
  const std::vector<int> y = {0, 1, 2, 1};
  EXPECT_EQ(dice_score(y, y, 1), 1.0);
}

TEST(DiceTest, DisjointPrediction) {
  const std::vector<int> pred = {1, 1, 0, 0};
  const std::vector<int> truth = {0, 0, 1, 1};
  EXPECT_EQ(dice_score(pred, truth, 1), 0.0);
}

TEST(DiceTest, HalfOverlap) {
  const std::vector<int> pred = {1, 1, 0, 0};
  const std::vector<int> truth = {1, 0, 1, 0};
  EXPECT_EQ(dice_score(pred, truth, 1), 0.5);
}

TEST(DiceTest, AbsentClassScoresOne) {
  const std::vector<int> y = {0, 0, 2};
  EXPECT_EQ(dice_score(y, y, 3), 1.0);
}

TEST(DiceTest, SymmetricAndBounded) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> cls(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(30), b(30);
    for (auto& v : a) v = cls(rng);
    for (auto& v : b) v = cls(rng);
    for (int c = 0; c < 4; ++c) {
      const double d = dice_score(a, b, c);
      EXPECT_EQ(d, dice_score(b, a, c));
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
    }
  }
}

TEST(DiceTest, LengthMismatchRejected) {
  const std::vector<int> a = {0, 1};
  const std::vector<int> b = {0};
  EXPECT_THROW(dice_score(a, b, 1), ValidationError);
}

TEST(ConvergenceScoreTest, SingleRound) {
  const std::vector<double> best = {0.5}, t = {7.0};
  EXPECT_EQ(projected_convergence_score(best, t), 0.5);
}

TEST(ConvergenceScoreTest, EqualTimes) {
  const std::vector<double> best = {0.5, 0.7}, t = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(projected_convergence_score(best, t), 0.6);
}

TEST(ConvergenceScoreTest, TimeWeighted) {
  const std::vector<double> best = {0.5, 0.7}, t = {3.0, 1.0};
  EXPECT_NEAR(projected_convergence_score(best, t), (0.5 * 3 + 0.7 * 1) / 4.0, 1e-15);
}

TEST(ConvergenceScoreTest, AppendingCurrentBestNeverLowers) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RoundRecord> records;
    double best = 0.0;
    for (int r = 0; r < 10; ++r) {
      RoundRecord rec;
      best = std::max(best, u(rng));
      rec.best_dice = best;
      rec.round_time_s = u(rng) * 100;
      records.push_back(rec);
    }
    const double before = convergence_score(records);
    RoundRecord next;
    next.best_dice = best;
    next.round_time_s = u(rng) * 100;
    records.push_back(next);
    EXPECT_GE(convergence_score(records), before);
  }
}

TEST(ConvergenceScoreTest, RejectsBadInput) {
  const std::vector<double> best = {0.5}, t = {0.0};
  EXPECT_THROW(projected_convergence_score(best, t), ValidationError);
  const std::vector<double> two = {0.5, 0.6};
  const std::vector<double> one = {1.0};
  EXPECT_THROW(projected_convergence_score(two, one), ValidationError);
}

}  // namespace
}  // namespace fedpod
