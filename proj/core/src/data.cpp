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
#include "fedpod/data.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fedpod/errors.hpp"

namespace fedpod {

DataShard::DataShard(std::size_t feature_dim, std::size_t num_classes, std::vector<double> features,
                     std::vector<int> labels, std::vector<std::string> sample_ids)
    : feature_dim_(feature_dim),
      num_classes_(num_classes),
      features_(std::move(features)),
      labels_(std::move(labels)),
      sample_ids_(std::move(sample_ids)) {
  if (feature_dim_ == 0) throw ValidationError("DataShard: feature dimension must be positive");
  if (num_classes_ < 2) throw ValidationError("DataShard: need at least two classes");
  if (labels_.empty()) throw ValidationError("DataShard: empty shard");
  if (labels_.size() != sample_ids_.size() || features_.size() != labels_.size() * feature_dim_) {
    throw StructuralError("DataShard: features, labels and sample ids disagree in length");
  }
  for (int label : labels_) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes_) {
      throw ValidationError("DataShard: label " + std::to_string(label) + " out of range");
    }
  }
}

DataShard DataShard::select(std::span<const std::size_t> rows) const {
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<std::string> ids;
  features.reserve(rows.size() * feature_dim_);
  labels.reserve(rows.size());
  ids.reserve(rows.size());
  for (std::size_t row : rows) {
    if (row >= size()) throw StructuralError("DataShard::select: row out of range");
    auto x = this->features(row);
    features.insert(features.end(), x.begin(), x.end());
    labels.push_back(labels_[row]);
    ids.push_back(sample_ids_[row]);
  }
  return DataShard(feature_dim_, num_classes_, std::move(features), std::move(labels), std::move(ids));
}

DataShard DataShard::window(std::size_t offset, std::size_t count) const {
  if (count == 0 || count > size()) throw ValidationError("DataShard::window: count must be in [1, size]");
  std::vector<std::size_t> rows(count);
  for (std::size_t k = 0; k < count; ++k) rows[k] = (offset + k) % size();
  return select(rows);
}

void BlobSpec::validate() const {
  if (feature_dim == 0) throw ValidationError("data.feature_dim must be positive");
  if (num_classes < 2) throw ValidationError("data.num_classes must be at least 2");
  if (!(class_separation >= 0.0) || !std::isfinite(class_separation)) {
    throw ValidationError("data.class_separation must be finite and non-negative");
  }
  if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma)) {
    throw ValidationError("data.noise_sigma must be positive");
  }
  if (!(site_shift_sigma >= 0.0) || !std::isfinite(site_shift_sigma)) {
    throw ValidationError("data.site_shift_sigma must be non-negative");
  }
  if (!class_priors.empty()) {
    if (class_priors.size() != num_classes) {
      throw ValidationError("data.class_priors must have one entry per class");
    }
    double sum = 0.0;
    for (double p : class_priors) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("data.class_priors must be non-negative");
      sum += p;
    }
    if (!(sum > 0.0)) throw ValidationError("data.class_priors must not all be zero");
  }
}

BlobGenerator::BlobGenerator(BlobSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.class_priors.empty()) spec_.class_priors.assign(spec_.num_classes, 1.0);

  // Each center sits at class_separation from the origin in a random
  // direction.
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  centers_.resize(spec_.num_classes * spec_.feature_dim);
  for (std::size_t c = 0; c < spec_.num_classes; ++c) {
    double norm2 = 0.0;
    for (std::size_t d = 0; d < spec_.feature_dim; ++d) {
      const double v = normal(rng);
      centers_[c * spec_.feature_dim + d] = v;
      norm2 += v * v;
    }
    const double scale = norm2 > 0.0 ? spec_.class_separation / std::sqrt(norm2) : 0.0;
    for (std::size_t d = 0; d < spec_.feature_dim; ++d) centers_[c * spec_.feature_dim + d] *= scale;
  }
}

std::vector<double> BlobGenerator::draw_site_shift(Rng& rng) const {
  std::vector<double> shift(spec_.feature_dim, 0.0);
  if (spec_.site_shift_sigma == 0.0) return shift;
  std::normal_distribution<double> normal(0.0, spec_.site_shift_sigma);
  for (double& v : shift) v = normal(rng);
  return shift;
}

DataShard BlobGenerator::sample(std::span<const std::string> ids, std::span<const double> site_shift,
                                Rng& rng) const {
  if (!site_shift.empty() && site_shift.size() != spec_.feature_dim) {
    throw StructuralError("BlobGenerator::sample: site shift dimension mismatch");
  }
  std::discrete_distribution<int> pick_class(spec_.class_priors.begin(), spec_.class_priors.end());
  std::normal_distribution<double> noise(0.0, spec_.noise_sigma);

  const std::size_t dim = spec_.feature_dim;
  std::vector<double> features;
  std::vector<int> labels;
  features.reserve(ids.size() * dim);
  labels.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int cls = pick_class(rng);
    labels.push_back(cls);
    const auto mu = center(static_cast<std::size_t>(cls));
    for (std::size_t d = 0; d < dim; ++d) {
      const double shift = site_shift.empty() ? 0.0 : site_shift[d];
      features.push_back(mu[d] + shift + noise(rng));
    }
  }
  return DataShard(dim, spec_.num_classes, std::move(features), std::move(labels),
                   std::vector<std::string>(ids.begin(), ids.end()));
}

}  // namespace fedpod
