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
#include <span>
#include <string_view>
#include <vector>

#include "fedpod/data.hpp"
#include "fedpod/params.hpp"
#include "fedpod/update.hpp"

namespace fedpod {

// Multinomial logistic regression. Parameters are laid out as the C x D
// weight matrix (row-major) followed by the C biases.
class SoftmaxClassifier {
 public:
  SoftmaxClassifier(std::size_t feature_dim, std::size_t num_classes);
  static SoftmaxClassifier for_shard(const DataShard& shard) {
    return SoftmaxClassifier(shard.feature_dim(), shard.num_classes());
  }

  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t param_dim() const noexcept { return num_classes_ * (feature_dim_ + 1); }

  void logits(const ModelParams& model, std::span<const double> x, std::span<double> out) const;

  // Ties resolve to the lowest class id.
  std::vector<int> predict(const ModelParams& model, const DataShard& shard) const;

  void check_compatible(const ModelParams& model) const;

 private:
  std::size_t feature_dim_;
  std::size_t num_classes_;
};

// Mean cross-entropy of the classifier over the shard.
double evaluate_cost(const ModelParams& model, const DataShard& shard);

struct TrainConfig {
  int epochs = 1;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  std::size_t batch_size = 8;

  void validate() const;
};

// Mini-batch SGD for cfg.epochs over shard. Validation cost on val is
// sampled at every epoch boundary. timings are left zeroed.
LocalUpdate train_local(const ModelParams& start, const DataShard& shard, const DataShard& val,
                        const TrainConfig& cfg, std::string_view node_id = {});

}  // namespace fedpod
