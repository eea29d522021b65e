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
#include "fedpod/params.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fedpod/errors.hpp"

namespace fedpod {

ModelParams::ModelParams(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("ModelParams: dimension must be positive");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("ModelParams: non-finite value at index " + std::to_string(i));
    }
  }
}

ModelParams ModelParams::zeros(std::size_t dim) { return ModelParams(std::vector<double>(dim, 0.0)); }

ModelParams combine(std::span<const WeightedModel> weighted) {
  if (weighted.empty()) throw ValidationError("combine: no models");
  const std::size_t dim = weighted.front().model->dim();
  for (const auto& [weight, model] : weighted) {
    if (model->dim() != dim) {
      throw StructuralError("combine: dimension mismatch (" + std::to_string(model->dim()) + " vs " +
                            std::to_string(dim) + ")");
    }
    if (!std::isfinite(weight)) throw ValidationError("combine: non-finite weight");
  }

  std::vector<double> out(dim, 0.0);
  for (const auto& [weight, model] : weighted) {
    const auto values = model->values();
    for (std::size_t i = 0; i < dim; ++i) out[i] += weight * values[i];
  }
  // ModelParams rejects overflow to inf here.
  return ModelParams(std::move(out));
}

}  // namespace fedpod
