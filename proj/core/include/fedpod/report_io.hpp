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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fedpod/engine.hpp"
#include "fedpod/params.hpp"

namespace fedpod {

inline constexpr std::string_view kMetricsCsvHeader =
    "round,phase,n_nodes,dropped,dice_label1,dice_label2,dice_label4,mean_dice,best_dice,"
    "round_time_s,cumulative_time_s,convergence_score,fallback_flags";

// 17 significant digits; reads back to the identical double.
std::string format_double(double value);

// "none", "K", "I" or "K+I".
std::string fallback_flags(const RoundRecord& record);

void write_metrics_csv(const ExperimentReport& report, std::ostream& out);
void write_summary(const ExperimentReport& report, std::ostream& out);

// 8-byte little-endian dimension followed by little-endian doubles.
void write_model_binary(const ModelParams& model, const std::filesystem::path& path);
ModelParams read_model_binary(const std::filesystem::path& path);

}  // namespace fedpod
