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

#include <array>
#include <span>

namespace fedpod {

// Class ids 1..3 of the synthetic task report as these segmentation labels.
inline constexpr std::array<int, 4> kSegmentationLabels = {0, 1, 2, 4};

// 2|X n Y| / (|X| + |Y|) with X, Y the positions labelled cls in pred and
// truth. Both sets empty scores 1.
double dice_score(std::span<const int> pred, std::span<const int> truth, int cls);

// Sum(best_dice[i] * round_time[i]) / Sum(round_time[i]).
double projected_convergence_score(std::span<const double> best_dice, std::span<const double> round_time_s);

}  // namespace fedpod
