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
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fedpod/rng.hpp"
#include "fedpod/update.hpp"

namespace fedpod {

// Simulated cost model for one round on one node. Units are abstract
// seconds.
struct TimingModel {
  double download_s = 600.0;
  double per_sample_train_s = 120.0;  // per sample per epoch
  double per_sample_val_s = 30.0;
  // Log-space standard deviation of the multiplicative jitter on each
  // component; 0 disables jitter.
  double jitter_sigma = 0.1;

  void validate() const;
};

// slowdown multiplies every component (an injected straggler).
TimingSample sample_timings(const TimingModel& model, std::size_t quota, int epochs, std::size_t val_size,
                            double slowdown, Rng& rng);

using NodeTiming = std::pair<std::string, TimingSample>;

// Nodes whose total time exceeds timeout_factor x the median total time.
std::set<std::string> detect_stragglers(std::span<const NodeTiming> timings, double timeout_factor);

// Componentwise maxima, summed.
double round_time(std::span<const TimingSample> timings);

}  // namespace fedpod
