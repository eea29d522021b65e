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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedpod/params.hpp"
#include "fedpod/update.hpp"

namespace fedpod {

enum class StrategyKind { kFedAvg, kFedPIDAvg, kFedPOD };

std::string_view to_string(StrategyKind kind);
// Case-insensitive. Throws ValidationError on an unknown name.
StrategyKind parse_strategy_kind(std::string_view name);

struct AggregationStrategy {
  StrategyKind kind = StrategyKind::kFedPOD;
  double alpha = 0.2;  // proportional (data size)
  double beta = 0.7;   // derivative (cost drop)
  double gamma = 0.1;  // integral (accumulated cost)
  int history_window = 6;

  // Coefficients non-negative, summing to 1 within 1e-12.
  void validate() const;
};

// Past post-training costs per node, most recent last.
class CostHistory {
 public:
  const std::vector<double>* find(const std::string& node_id) const;
  void record(const std::string& node_id, double cost) { costs_[node_id].push_back(cost); }
  void record(std::span<const LocalUpdate> updates);
  bool empty() const noexcept { return costs_.empty(); }

 private:
  std::map<std::string, std::vector<double>> costs_;
};

struct MergeWeights {
  std::vector<double> weights;
  // The derivative (K) or integral (I) denominator was <= 0 and that
  // term's mass was moved onto the proportional term.
  bool derivative_fallback = false;
  bool integral_fallback = false;

  bool any_fallback() const noexcept { return derivative_fallback || integral_fallback; }
};

// s_j / S.
MergeWeights fedavg_weights(std::span<const LocalUpdate> updates);

// k_j = c(previous) - c(current), m_j = sum of the last history_window costs
// including the current one. A node without history uses its pre-training
// cost as c(previous).
MergeWeights fedpid_weights(std::span<const LocalUpdate> updates, const CostHistory& history,
                            const AggregationStrategy& strategy);

// k_j = (s_j/S)(pre_j - post_j), m_j = (s_j/S) * area under the node's cost
// trajectory. Uses only the current round's updates.
MergeWeights fedpod_weights(std::span<const LocalUpdate> updates, const AggregationStrategy& strategy);

// Dispatches on strategy.kind.
MergeWeights strategy_weights(std::span<const LocalUpdate> updates, const CostHistory& history,
                              const AggregationStrategy& strategy);

// Sum of weight_j * params_j, combined in node_id order so the result does
// not depend on the order of the inputs. Weights must sum to 1 +- 1e-9;
// negative entries are allowed.
ModelParams aggregate(std::span<const LocalUpdate> updates, std::span<const double> weights);

}  // namespace fedpod
