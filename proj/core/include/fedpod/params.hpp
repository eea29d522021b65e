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
#include <span>
#include <vector>

namespace fedpod {

// Flat real-valued parameter vector. Every value is finite.
class ModelParams {
 public:
  // Throws ValidationError on an empty vector or a non-finite entry.
  explicit ModelParams(std::vector<double> values);

  static ModelParams zeros(std::size_t dim);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const ModelParams&) const = default;

 private:
  std::vector<double> values_;
};

struct WeightedModel {
  double weight;
  const ModelParams* model;
};

// Elementwise sum of weight * model. All models must share one dimension.
ModelParams combine(std::span<const WeightedModel> weighted);

}  // namespace fedpod
