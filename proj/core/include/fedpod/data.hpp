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
#include <string>
#include <vector>

#include "fedpod/rng.hpp"

namespace fedpod {

// Labelled samples held by one node. Features are stored row-major.
class DataShard {
 public:
  DataShard(std::size_t feature_dim, std::size_t num_classes, std::vector<double> features,
            std::vector<int> labels, std::vector<std::string> sample_ids);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::size_t num_classes() const noexcept { return num_classes_; }

  std::span<const double> features(std::size_t row) const {
    return std::span<const double>(features_).subspan(row * feature_dim_, feature_dim_);
  }
  int label(std::size_t row) const { return labels_[row]; }
  std::span<const int> labels() const noexcept { return labels_; }
  std::span<const std::string> sample_ids() const noexcept { return sample_ids_; }

  DataShard select(std::span<const std::size_t> rows) const;

  // count rows starting at offset, wrapping past the end.
  DataShard window(std::size_t offset, std::size_t count) const;

 private:
  std::size_t feature_dim_;
  std::size_t num_classes_;
  std::vector<double> features_;
  std::vector<int> labels_;
  std::vector<std::string> sample_ids_;
};

// Per-class Gaussian blobs. Class 0 is background; the remaining classes
// stand in for the tumour sub-region labels.
struct BlobSpec {
  std::size_t feature_dim = 8;
  std::size_t num_classes = 4;
  double class_separation = 1.5;
  double noise_sigma = 1.0;
  // Standard deviation of the per-institution mean offset (domain shift).
  double site_shift_sigma = 0.25;
  // Empty means uniform.
  std::vector<double> class_priors = {0.55, 0.15, 0.15, 0.15};

  void validate() const;
};

class BlobGenerator {
 public:
  BlobGenerator(BlobSpec spec, std::uint64_t seed);

  const BlobSpec& spec() const noexcept { return spec_; }
  std::span<const double> center(std::size_t cls) const {
    return std::span<const double>(centers_).subspan(cls * spec_.feature_dim, spec_.feature_dim);
  }

  std::vector<double> draw_site_shift(Rng& rng) const;

  // One sample per id, drawn around the class centers offset by site_shift
  // (empty for none).
  DataShard sample(std::span<const std::string> ids, std::span<const double> site_shift, Rng& rng) const;

 private:
  BlobSpec spec_;
  std::vector<double> centers_;
};

}  // namespace fedpod
