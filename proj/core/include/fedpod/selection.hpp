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
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fedpod/cohort.hpp"
#include "fedpod/schedule.hpp"

namespace fedpod {

double upper_bound(double lambda, double z);

struct NodeClassification {
  // Each ordered by descending count, ties by id.
  std::vector<std::string> primary;
  std::vector<std::string> secondary;
  double threshold = 0.0;
};

// Primary: count >= upper_bound(lambda, z). Secondary: the rest.
NodeClassification classify_nodes(const PartitionTable& table, const PoissonModel& model, double z);

enum class Role { kPrimary, kSecondary };

struct Participant {
  std::string institution_id;
  Role role;
  std::size_t quota;
  std::size_t shard_offset;

  bool operator==(const Participant&) const = default;
};

struct TaskPlan {
  int round_index = 0;
  std::vector<Participant> participants;
  // Fewer eligible secondaries than the phase requested.
  bool secondary_shortfall = false;
};

// Next window start per primary institution; absent means 0.
using ShardCursor = std::map<std::string, std::size_t>;

struct SelectionContext {
  const PartitionTable& table;
  const NodeClassification& classification;
  double lambda;
  double margin_fraction;
};

// round(lambda) clamped to the band lambda(1 +- margin) and to holdings,
// never below 1.
std::size_t primary_quota(double lambda, double margin_fraction, std::size_t holdings);

// Up to phase.n_primary non-blacklisted primaries in classification order,
// each supplying a rotating window of primary_quota samples, plus
// phase.n_secondary secondaries drawn without replacement, each supplying
// all of its samples. Throws EmptyCohortError when primaries are requested
// and none is eligible, or when the plan would be empty.
TaskPlan compose_task(int round_index, const SelectionContext& context, const PhaseEntry& phase,
                      const std::set<std::string>& blacklist, const ShardCursor& cursor,
                      std::uint64_t rng_seed);

// Every non-blacklisted institution with all of its data (plain FedAvg
// participation).
TaskPlan compose_full_task(int round_index, const PartitionTable& table,
                           const std::set<std::string>& blacklist);

// Moves each primary participant's window forward by its quota, wrapping
// at its holdings.
void advance_cursor(ShardCursor& cursor, const TaskPlan& plan, const PartitionTable& table);

}  // namespace fedpod
