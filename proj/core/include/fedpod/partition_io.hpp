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

#include "fedpod/cohort.hpp"

namespace fedpod {

// Subject_ID,Partition_ID rows, one per sample.
inline constexpr const char* kPartitionCsvHeader = "Subject_ID,Partition_ID";

PartitionTable load_partition_csv(const std::filesystem::path& path);
PartitionTable read_partition_csv(std::istream& in, const std::string& source_name = "<stream>");

// Rows ordered by institution, then sample id.
void write_partition_csv(const PartitionTable& table, const std::filesystem::path& path);
void write_partition_csv(const PartitionTable& table, std::ostream& out);

}  // namespace fedpod
