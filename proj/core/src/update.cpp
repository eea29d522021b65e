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
#include "fedpod/update.hpp"

#include <cmath>
#include <utility>

#include "fedpod/errors.hpp"

namespace fedpod {

CostTrajectory::CostTrajectory(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ValidationError("CostTrajectory: need at least two samples");
  if (samples_.front().fraction != 0.0 || samples_.back().fraction != 1.0) {
    throw ValidationError("CostTrajectory: fractions must run from 0 to 1");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.cost) || s.cost < 0.0) {
      throw ValidationError("CostTrajectory: cost must be finite and non-negative");
    }
    if (i > 0 && !(s.fraction > samples_[i - 1].fraction)) {
      throw ValidationError("CostTrajectory: fractions must be strictly increasing");
    }
  }
}

CostTrajectory CostTrajectory::linear(double pre_cost, double post_cost) {
  return CostTrajectory({{0.0, pre_cost}, {1.0, post_cost}});
}

double CostTrajectory::integral() const noexcept {
  double area = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const auto& a = samples_[i - 1];
    const auto& b = samples_[i];
    area += (b.fraction - a.fraction) * (a.cost + b.cost) / 2.0;
  }
  return area;
}

}  // namespace fedpod
