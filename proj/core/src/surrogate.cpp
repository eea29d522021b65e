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
#include "fedpod/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fedpod/errors.hpp"
#include "fedpod/rng.hpp"

namespace fedpod {
namespace {

double log_sum_exp(std::span<const double> z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SoftmaxClassifier::SoftmaxClassifier(std::size_t feature_dim, std::size_t num_classes)
    : feature_dim_(feature_dim), num_classes_(num_classes) {
  if (feature_dim_ == 0 || num_classes_ < 2) {
    throw ValidationError("SoftmaxClassifier: need a positive feature dimension and >= 2 classes");
  }
}

void SoftmaxClassifier::check_compatible(const ModelParams& model) const {
  if (model.dim() != param_dim()) {
    throw StructuralError("model has " + std::to_string(model.dim()) + " parameters, classifier expects " +
                          std::to_string(param_dim()));
  }
}

void SoftmaxClassifier::logits(const ModelParams& model, std::span<const double> x, std::span<double> out) const {
  const auto w = model.values();
  const std::size_t bias = num_classes_ * feature_dim_;
  for (std::size_t c = 0; c < num_classes_; ++c) {
    double z = w[bias + c];
    const double* row = w.data() + c * feature_dim_;
    for (std::size_t d = 0; d < feature_dim_; ++d) z += row[d] * x[d];
    out[c] = z;
  }
}

std::vector<int> SoftmaxClassifier::predict(const ModelParams& model, const DataShard& shard) const {
  check_compatible(model);
  std::vector<double> z(num_classes_);
  std::vector<int> out(shard.size());
  for (std::size_t i = 0; i < shard.size(); ++i) {
    logits(model, shard.features(i), z);
    out[i] = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
  }
  return out;
}

double evaluate_cost(const ModelParams& model, const DataShard& shard) {
  const auto clf = SoftmaxClassifier::for_shard(shard);
  clf.check_compatible(model);
  std::vector<double> z(clf.num_classes());
  double total = 0.0;
  for (std::size_t i = 0; i < shard.size(); ++i) {
    clf.logits(model, shard.features(i), z);
    total += log_sum_exp(z) - z[static_cast<std::size_t>(shard.label(i))];
  }
  // Rounding can leave a hair below zero for a near-perfect fit.
  return std::max(0.0, total / static_cast<double>(shard.size()));
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ValidationError("TrainConfig: epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("TrainConfig: learning_rate must be positive and finite");
  }
  if (batch_size < 1) throw ValidationError("TrainConfig: batch_size must be >= 1");
}

LocalUpdate train_local(const ModelParams& start, const DataShard& shard, const DataShard& val,
                        const TrainConfig& cfg, std::string_view node_id) {
  cfg.validate();
  const auto clf = SoftmaxClassifier::for_shard(shard);
  clf.check_compatible(start);
  if (val.feature_dim() != shard.feature_dim() || val.num_classes() != shard.num_classes()) {
    throw StructuralError("train_local: validation shard does not match the training shard");
  }

  const std::size_t classes = clf.num_classes();
  const std::size_t dim = clf.feature_dim();
  const std::size_t bias = classes * dim;

  std::vector<double> w(start.values().begin(), start.values().end());
  std::vector<double> grad(w.size());
  std::vector<double> z(classes);
  std::vector<std::size_t> order(shard.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);

  auto diverged = [&](const char* what) {
    return TrainingDivergenceError(std::string(node_id), 0,
                                   "node '" + std::string(node_id) + "': " + what + " during local training");
  };

  const double pre_cost = evaluate_cost(start, val);
  std::vector<CostTrajectory::Sample> samples;
  samples.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  samples.push_back({0.0, pre_cost});

  ModelParams current = start;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t row = order[k];
        const auto x = shard.features(row);
        // logits from the working vector
        for (std::size_t c = 0; c < classes; ++c) {
          double v = w[bias + c];
          for (std::size_t d = 0; d < dim; ++d) v += w[c * dim + d] * x[d];
          z[c] = v;
        }
        const double lse = log_sum_exp(z);
        for (std::size_t c = 0; c < classes; ++c) {
          const double residual = std::exp(z[c] - lse) - (static_cast<std::size_t>(shard.label(row)) == c ? 1.0 : 0.0);
          for (std::size_t d = 0; d < dim; ++d) grad[c * dim + d] += residual * x[d];
          grad[bias + c] += residual;
        }
      }
      if (!all_finite(grad)) throw diverged("non-finite gradient");
      const double step = cfg.learning_rate / static_cast<double>(end - begin);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= step * grad[i];
      if (!all_finite(w)) throw diverged("non-finite parameter");
    }
    current = ModelParams(w);
    const double fraction =
        epoch == cfg.epochs ? 1.0 : static_cast<double>(epoch) / static_cast<double>(cfg.epochs);
    samples.push_back({fraction, evaluate_cost(current, val)});
  }

  const double post_cost = samples.back().cost;
  return LocalUpdate{
      .node_id = std::string(node_id),
      .params = std::move(current),
      .data_size = shard.size(),
      .pre_cost = pre_cost,
      .post_cost = post_cost,
      .trajectory = CostTrajectory(std::move(samples)),
      .timings = {},
  };
}

}  // namespace fedpod
