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
#include <string>
#include <string_view>

#include "fedpod/engine.hpp"

namespace fedpod {

// Flat "key = value" text. Keys are dotted paths (strategy.alpha,
// schedule.2.epochs, ...); '#' starts a comment. Unknown keys are rejected.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text, const std::string& source_name = "<config>");

// Inverse of parse_config_text for every field.
std::string format_config(const ExperimentConfig& config);

}  // namespace fedpod
