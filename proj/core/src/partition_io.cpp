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
#include "fedpod/partition_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fedpod/errors.hpp"

namespace fedpod {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

PartitionTable read_partition_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;

  // Header; a UTF-8 byte-order mark is tolerated.
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    view = trim(view);
    if (view.empty()) continue;
    if (view != kPartitionCsvHeader) {
      throw ParseError(source_name, line_no, std::string("expected header '") + kPartitionCsvHeader + "'");
    }
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError(source_name, line_no, "missing header row");

  PartitionTable::Entries entries;
  std::set<std::string> seen;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(source_name, line_no, "expected exactly two comma-separated fields");
    }
    const std::string subject(trim(view.substr(0, comma)));
    const std::string partition(trim(view.substr(comma + 1)));
    if (subject.empty()) throw ParseError(source_name, line_no, "missing Subject_ID");
    if (partition.empty()) throw ParseError(source_name, line_no, "missing Partition_ID");
    if (!seen.insert(subject).second) {
      throw ParseError(source_name, line_no, "duplicate Subject_ID '" + subject + "'");
    }
    entries[partition].push_back(subject);
    ++rows;
  }
  if (rows == 0) throw ParseError(source_name, line_no, "no data rows");
  return PartitionTable(std::move(entries));
}

PartitionTable load_partition_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open partition file '" + path.string() + "'");
  return read_partition_csv(in, path.string());
}

void write_partition_csv(const PartitionTable& table, std::ostream& out) {
  out << kPartitionCsvHeader << '\n';
  for (const auto& [institution, ids] : table.entries()) {
    for (const auto& id : ids) out << id << ',' << institution << '\n';
  }
}

void write_partition_csv(const PartitionTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write partition file '" + path.string() + "'");
  write_partition_csv(table, out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace fedpod
