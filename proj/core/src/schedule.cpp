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
#include "fedpod/schedule.hpp"

#include <cmath>
#include <string>

#include "fedpod/errors.hpp"

namespace fedpod {

Schedule default_schedule() {
  return {
      {.first_round = 1, .last_round = 5, .n_primary = 6, .n_secondary = 0, .learning_rate = 1e-3, .epochs = 4},
      {.first_round = 6, .last_round = 10, .n_primary = 6, .n_secondary = 2, .learning_rate = 1e-3, .epochs = 4},
      {.first_round = 11, .last_round = 15, .n_primary = 6, .n_secondary = 4, .learning_rate = 1e-3, .epochs = 3},
      {.first_round = 16, .last_round = std::nullopt, .n_primary = 6, .n_secondary = 6, .learning_rate = 1e-3,
       .epochs = 3},
  };
}

void validate_schedule(const Schedule& schedule, int max_rounds) {
  if (schedule.empty()) {
    if (max_rounds == 0) return;
    throw ValidationError("schedule: no phases");
  }
  int expected = 1;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& p = schedule[i];
    const std::string where = "schedule phase " + std::to_string(i + 1) + ": ";
    if (p.first_round != expected) {
      throw ValidationError(where + "starts at round " + std::to_string(p.first_round) + ", expected " +
                            std::to_string(expected) + " (gap or overlap)");
    }
    if (p.last_round && *p.last_round < p.first_round) throw ValidationError(where + "empty round range");
    if (!p.last_round && i + 1 != schedule.size()) {
      throw ValidationError(where + "only the last phase may be open-ended");
    }
    if (p.n_primary < 0 || p.n_secondary < 0) throw ValidationError(where + "negative node count");
    if (p.n_nodes() == 0) throw ValidationError(where + "requests no nodes");
    if (p.epochs < 1) throw ValidationError(where + "epochs must be >= 1");
    if (!(p.learning_rate > 0.0) || !std::isfinite(p.learning_rate)) {
      throw ValidationError(where + "learning rate must be positive");
    }
    if (p.last_round) expected = *p.last_round + 1;
  }
  const auto& last = schedule.back();
  if (last.last_round && *last.last_round < max_rounds) {
    throw ValidationError("schedule ends at round " + std::to_string(*last.last_round) + " but max_rounds is " +
                          std::to_string(max_rounds));
  }
}

std::size_t phase_index(const Schedule& schedule, int round) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].covers(round)) return i;
  }
  throw ValidationError("no schedule phase covers round " + std::to_string(round));
}

}  // namespace fedpod
