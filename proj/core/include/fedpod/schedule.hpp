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
#include <optional>
#include <vector>

namespace fedpod {

// Hyper-parameters for a contiguous range of rounds.
struct PhaseEntry {
  int first_round = 1;
  std::optional<int> last_round;  // unset = open-ended
  int n_primary = 0;
  int n_secondary = 0;
  double learning_rate = 1e-3;
  int epochs = 1;

  int n_nodes() const noexcept { return n_primary + n_secondary; }
  bool covers(int round) const noexcept {
    return round >= first_round && (!last_round || round <= *last_round);
  }
  bool operator==(const PhaseEntry&) const = default;
};

using Schedule = std::vector<PhaseEntry>;

// Four phases scaling out from 6 primaries to 6 primaries + 6 secondaries.
Schedule default_schedule();

// Throws ValidationError unless phases are ordered, start at round 1, leave
// no gaps or overlaps and reach max_rounds.
void validate_schedule(const Schedule& schedule, int max_rounds);

// 0-based index of the phase covering round. Throws ValidationError when no
// phase does.
std::size_t phase_index(const Schedule& schedule, int round);

}  // namespace fedpod
