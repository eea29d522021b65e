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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fedpod/params.hpp"

namespace fedpod {

// Validation cost sampled over the course of local training.
class CostTrajectory {
 public:
  struct Sample {
    double fraction;  // of training completed, in [0, 1]
    double cost;

    bool operator==(const Sample&) const = default;
  };

  // Requires >= 2 samples, fractions strictly increasing from 0.0 to 1.0,
  // costs finite and non-negative.
  explicit CostTrajectory(std::vector<Sample> samples);

  // Straight line from pre to post.
  static CostTrajectory linear(double pre_cost, double post_cost);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  double first_cost() const noexcept { return samples_.front().cost; }
  double last_cost() const noexcept { return samples_.back().cost; }

  // Trapezoidal area under cost over fraction in [0, 1].
  double integral() const noexcept;

  bool operator==(const CostTrajectory&) const = default;

 private:
  std::vector<Sample> samples_;
};

// Simulated seconds spent by one node in each phase of a round.
struct TimingSample {
  double download_s = 0.0;
  double pre_val_s = 0.0;
  double train_s = 0.0;
  double post_val_s = 0.0;

  double total() const noexcept { return download_s + pre_val_s + train_s + post_val_s; }
  bool operator==(const TimingSample&) const = default;
};

// One node's contribution to a round.
struct LocalUpdate {
  std::string node_id;
  ModelParams params;
  std::size_t data_size;
  double pre_cost;
  double post_cost;
  CostTrajectory trajectory;
  TimingSample timings;
};

}  // namespace fedpod
