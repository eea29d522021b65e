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
#include "fedpod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fedpod/errors.hpp"

namespace fedpod {

double dice_score(std::span<const int> pred, std::span<const int> truth, int cls) {
  if (pred.size() != truth.size()) throw StructuralError("dice_score: prediction and truth lengths differ");
  if (pred.empty()) throw ValidationError("dice_score: empty input");
  std::size_t in_pred = 0;
  std::size_t in_truth = 0;
  std::size_t overlap = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == cls;
    const bool t = truth[i] == cls;
    in_pred += p;
    in_truth += t;
    overlap += p && t;
  }
  if (in_pred + in_truth == 0) return 1.0;
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(in_pred + in_truth);
}

double projected_convergence_score(std::span<const double> best_dice, std::span<const double> round_time_s) {
  if (best_dice.size() != round_time_s.size()) {
    throw StructuralError("convergence score: one round time per best Dice value required");
  }
  if (best_dice.empty()) throw ValidationError("convergence score: no rounds");
  // Written as the peak minus a time-weighted shortfall so that appending a
  // round at the peak can never lower the result through rounding.
  const double peak = *std::max_element(best_dice.begin(), best_dice.end());
  double shortfall = 0.0;
  double time = 0.0;
  for (std::size_t i = 0; i < best_dice.size(); ++i) {
    if (!(round_time_s[i] > 0.0) || !std::isfinite(round_time_s[i])) {
      throw ValidationError("convergence score: round times must be positive");
    }
    shortfall += (peak - best_dice[i]) * round_time_s[i];
    time += round_time_s[i];
  }
  return peak - shortfall / time;
}

}  // namespace fedpod
