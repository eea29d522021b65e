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
#include "fedpod/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fedpod/errors.hpp"
#include "fedpod/rng.hpp"

namespace fedpod {

double upper_bound(double lambda, double z) {
  if (!(lambda > 0.0)) throw ValidationError("upper_bound: lambda must be positive");
  return lambda + z * std::sqrt(lambda);
}

NodeClassification classify_nodes(const PartitionTable& table, const PoissonModel& model, double z) {
  std::vector<std::pair<std::size_t, std::string>> ranked;
  ranked.reserve(table.size());
  for (const auto& [id, samples] : table.entries()) ranked.emplace_back(samples.size(), id);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  NodeClassification out;
  out.threshold = upper_bound(model.lambda, z);
  for (auto& [count, id] : ranked) {
    (static_cast<double>(count) >= out.threshold ? out.primary : out.secondary).push_back(std::move(id));
  }
  return out;
}

std::size_t primary_quota(double lambda, double margin_fraction, std::size_t holdings) {
  if (holdings == 0) throw ValidationError("primary_quota: institution holds no data");
  double quota = std::round(lambda);
  const double lo = std::ceil(lambda * (1.0 - margin_fraction));
  const double hi = std::floor(lambda * (1.0 + margin_fraction));
  // With a zero margin and fractional lambda the band holds no integer.
  if (lo <= hi) quota = std::clamp(quota, lo, hi);
  quota = std::min(quota, static_cast<double>(holdings));
  return static_cast<std::size_t>(std::max(quota, 1.0));
}

TaskPlan compose_task(int round_index, const SelectionContext& context, const PhaseEntry& phase,
                      const std::set<std::string>& blacklist, const ShardCursor& cursor,
                      std::uint64_t rng_seed) {
  if (!(context.margin_fraction >= 0.0 && context.margin_fraction < 1.0)) {
    throw ValidationError("compose_task: margin_fraction must be in [0, 1)");
  }
  const auto eligible = [&](const std::vector<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& id : ids) {
      if (!blacklist.contains(id) && context.table.count(id) > 0) out.push_back(id);
    }
    return out;
  };

  TaskPlan plan;
  plan.round_index = round_index;

  const auto primaries = eligible(context.classification.primary);
  if (phase.n_primary > 0 && primaries.empty()) {
    throw EmptyCohortError("round " + std::to_string(round_index) + ": no eligible primary institution");
  }
  const auto n_primary = std::min(primaries.size(), static_cast<std::size_t>(phase.n_primary));
  for (std::size_t i = 0; i < n_primary; ++i) {
    const auto& id = primaries[i];
    const std::size_t holdings = context.table.count(id);
    const auto it = cursor.find(id);
    const std::size_t offset = it == cursor.end() ? 0 : it->second % holdings;
    plan.participants.push_back(
        {id, Role::kPrimary, primary_quota(context.lambda, context.margin_fraction, holdings), offset});
  }

  const auto secondaries = eligible(context.classification.secondary);
  const auto wanted = static_cast<std::size_t>(phase.n_secondary);
  std::vector<std::size_t> picks(secondaries.size());
  std::iota(picks.begin(), picks.end(), std::size_t{0});
  if (secondaries.size() > wanted) {
    Rng rng(derive_seed(rng_seed, {static_cast<std::uint64_t>(Stream::kSecondarySelection),
                                   static_cast<std::uint64_t>(round_index)}));
    std::shuffle(picks.begin(), picks.end(), rng);
    picks.resize(wanted);
    std::sort(picks.begin(), picks.end());
  } else {
    plan.secondary_shortfall = secondaries.size() < wanted;
  }
  for (std::size_t i : picks) {
    const auto& id = secondaries[i];
    plan.participants.push_back({id, Role::kSecondary, context.table.count(id), 0});
  }

  if (plan.participants.empty()) {
    throw EmptyCohortError("round " + std::to_string(round_index) + ": no eligible institution");
  }
  return plan;
}

TaskPlan compose_full_task(int round_index, const PartitionTable& table, const std::set<std::string>& blacklist) {
  TaskPlan plan;
  plan.round_index = round_index;
  for (const auto& [id, samples] : table.entries()) {
    if (blacklist.contains(id) || samples.empty()) continue;
    plan.participants.push_back({id, Role::kSecondary, samples.size(), 0});
  }
  if (plan.participants.empty()) {
    throw EmptyCohortError("round " + std::to_string(round_index) + ": no eligible institution");
  }
  return plan;
}

void advance_cursor(ShardCursor& cursor, const TaskPlan& plan, const PartitionTable& table) {
  for (const auto& p : plan.participants) {
    if (p.role != Role::kPrimary) continue;
    cursor[p.institution_id] = (p.shard_offset + p.quota) % table.count(p.institution_id);
  }
}

}  // namespace fedpod
