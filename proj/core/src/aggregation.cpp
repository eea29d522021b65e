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
#include "fedpod/aggregation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "fedpod/errors.hpp"

namespace fedpod {
namespace {

// Summing in sorted order makes the result independent of input order.
double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

std::vector<double> size_fractions(std::span<const LocalUpdate> updates) {
  if (updates.empty()) throw ValidationError("aggregation: no updates");
  std::size_t total = 0;
  for (const auto& u : updates) {
    if (u.data_size == 0) throw ValidationError("aggregation: node '" + u.node_id + "' reports no data");
    total += u.data_size;
  }
  std::vector<double> out;
  out.reserve(updates.size());
  for (const auto& u : updates) out.push_back(static_cast<double>(u.data_size) / static_cast<double>(total));
  return out;
}

// alpha * p + beta * k / K + gamma * m / I, moving a term's mass onto alpha
// when its denominator is not positive.
MergeWeights blend(const std::vector<double>& p, const std::vector<double>& k, const std::vector<double>& m,
                   const AggregationStrategy& strategy) {
  double alpha = strategy.alpha;
  double beta = strategy.beta;
  double gamma = strategy.gamma;
  MergeWeights out;

  const double big_k = beta > 0.0 ? canonical_sum(k) : 0.0;
  const double big_i = gamma > 0.0 ? canonical_sum(m) : 0.0;
  if (beta > 0.0 && !(big_k > 0.0)) {
    alpha += beta;
    beta = 0.0;
    out.derivative_fallback = true;
  }
  if (gamma > 0.0 && !(big_i > 0.0)) {
    alpha += gamma;
    gamma = 0.0;
    out.integral_fallback = true;
  }

  out.weights.resize(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    double w = alpha * p[j];
    if (beta > 0.0) w += beta * (k[j] / big_k);
    if (gamma > 0.0) w += gamma * (m[j] / big_i);
    out.weights[j] = w;
  }
  return out;
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kFedAvg:
      return "fedavg";
    case StrategyKind::kFedPIDAvg:
      return "fedpidavg";
    case StrategyKind::kFedPOD:
      return "fedpod";
  }
  return "unknown";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "fedavg") return StrategyKind::kFedAvg;
  if (lower == "fedpidavg" || lower == "fedpid") return StrategyKind::kFedPIDAvg;
  if (lower == "fedpod") return StrategyKind::kFedPOD;
  throw ValidationError("unknown aggregation strategy '" + std::string(name) + "'");
}

void AggregationStrategy::validate() const {
  for (double c : {alpha, beta, gamma}) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("strategy: alpha, beta, gamma must be >= 0");
  }
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-12) {
    throw ValidationError("strategy: alpha + beta + gamma must equal 1");
  }
  if (history_window < 1) throw ValidationError("strategy: history_window must be >= 1");
}

const std::vector<double>* CostHistory::find(const std::string& node_id) const {
  auto it = costs_.find(node_id);
  return it == costs_.end() || it->second.empty() ? nullptr : &it->second;
}

void CostHistory::record(std::span<const LocalUpdate> updates) {
  for (const auto& u : updates) record(u.node_id, u.post_cost);
}

MergeWeights fedavg_weights(std::span<const LocalUpdate> updates) {
  return MergeWeights{.weights = size_fractions(updates)};
}

MergeWeights fedpid_weights(std::span<const LocalUpdate> updates, const CostHistory& history,
                            const AggregationStrategy& strategy) {
  strategy.validate();
  const auto p = size_fractions(updates);
  std::vector<double> k(updates.size());
  std::vector<double> m(updates.size());
  const auto window = static_cast<std::size_t>(strategy.history_window);
  for (std::size_t j = 0; j < updates.size(); ++j) {
    const auto& u = updates[j];
    const auto* past = history.find(u.node_id);
    const double previous = past ? past->back() : u.pre_cost;
    k[j] = previous - u.post_cost;

    double integral = u.post_cost;
    if (past) {
      const std::size_t take = std::min(window - 1, past->size());
      for (std::size_t l = 0; l < take; ++l) integral += (*past)[past->size() - 1 - l];
    }
    m[j] = integral;
  }
  return blend(p, k, m, strategy);
}

MergeWeights fedpod_weights(std::span<const LocalUpdate> updates, const AggregationStrategy& strategy) {
  strategy.validate();
  const auto p = size_fractions(updates);
  std::vector<double> k(updates.size());
  std::vector<double> m(updates.size());
  for (std::size_t j = 0; j < updates.size(); ++j) {
    const auto& u = updates[j];
    k[j] = p[j] * (u.pre_cost - u.post_cost);
    m[j] = p[j] * u.trajectory.integral();
  }
  return blend(p, k, m, strategy);
}

MergeWeights strategy_weights(std::span<const LocalUpdate> updates, const CostHistory& history,
                              const AggregationStrategy& strategy) {
  switch (strategy.kind) {
    case StrategyKind::kFedAvg:
      return fedavg_weights(updates);
    case StrategyKind::kFedPIDAvg:
      return fedpid_weights(updates, history, strategy);
    case StrategyKind::kFedPOD:
      return fedpod_weights(updates, strategy);
  }
  throw ValidationError("unknown strategy kind");
}

ModelParams aggregate(std::span<const LocalUpdate> updates, std::span<const double> weights) {
  if (updates.empty()) throw ValidationError("aggregate: no updates");
  if (updates.size() != weights.size()) throw StructuralError("aggregate: one weight per update required");
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("aggregate: non-finite weight");
  }
  const double sum = canonical_sum({weights.begin(), weights.end()});
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("aggregate: weights sum to " + std::to_string(sum) + ", expected 1");
  }

  std::vector<std::size_t> order(updates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return updates[a].node_id < updates[b].node_id; });
  std::vector<WeightedModel> weighted;
  weighted.reserve(updates.size());
  for (std::size_t j : order) weighted.push_back({weights[j], &updates[j].params});
  return combine(weighted);
}

}  // namespace fedpod
