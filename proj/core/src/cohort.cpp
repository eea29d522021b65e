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
#include "fedpod/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <utility>

#include "fedpod/errors.hpp"
#include "fedpod/rng.hpp"

namespace fedpod {
namespace {

std::string padded(std::size_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

int digits(std::size_t n) { return static_cast<int>(std::to_string(n).size()); }

}  // namespace

PartitionTable::PartitionTable(Entries entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("PartitionTable: at least one institution required");
  std::set<std::string> seen;
  for (auto& [institution, ids] : entries_) {
    if (institution.empty()) throw ValidationError("PartitionTable: empty institution id");
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw ValidationError("PartitionTable: duplicate sample id '" + id + "'");
      }
    }
    total_ += ids.size();
  }
}

const std::vector<std::string>& PartitionTable::sample_ids(const std::string& institution) const {
  auto it = entries_.find(institution);
  if (it == entries_.end()) throw ValidationError("unknown institution '" + institution + "'");
  return it->second;
}

PoissonModel::PoissonModel(double lambda_) : lambda(lambda_) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("Poisson lambda must be positive");
}

double poisson_pmf(std::uint64_t x, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("poisson_pmf: lambda must be positive");
  const double k = static_cast<double>(x);
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

PoissonModel fit_poisson(const PartitionTable& table) {
  if (table.total() == 0) throw DegenerateModelError("fit_poisson: every institution count is zero");
  return PoissonModel(static_cast<double>(table.total()) / static_cast<double>(table.size()));
}

void SyntheticCohortSpec::validate() const {
  if (institutions < 1) throw ValidationError("cohort.institutions must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("cohort.lambda must be positive");
  if (outliers < 0 || outliers >= institutions) {
    throw ValidationError("cohort.outliers must be in [0, institutions)");
  }
  if (!(outlier_scale >= 1.0) || !std::isfinite(outlier_scale)) {
    throw ValidationError("cohort.outlier_scale must be >= 1");
  }
}

PartitionTable synthetic_partition(const SyntheticCohortSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(derive_seed(seed, Stream::kCohortCounts));
  std::poisson_distribution<long long> regular(spec.lambda);
  std::poisson_distribution<long long> outlier(spec.lambda * spec.outlier_scale);

  const auto n = static_cast<std::size_t>(spec.institutions);
  const auto first_outlier = n - static_cast<std::size_t>(spec.outliers);
  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long draw = i < first_outlier ? regular(rng) : outlier(rng);
    counts[i] = static_cast<std::size_t>(std::max<long long>(draw, 1));
  }

  std::size_t total = 0;
  for (auto c : counts) total += c;
  const int inst_width = std::max(2, digits(n));
  const int sample_width = std::max(5, digits(total));

  PartitionTable::Entries entries;
  std::size_t next = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> ids;
    ids.reserve(counts[i]);
    for (std::size_t k = 0; k < counts[i]; ++k) ids.push_back("S" + padded(next++, sample_width));
    entries.emplace(padded(i + 1, inst_width), std::move(ids));
  }
  return PartitionTable(std::move(entries));
}

std::map<std::string, DataShard> synthesize_shards(const PartitionTable& table, const BlobGenerator& blobs,
                                                   std::uint64_t seed) {
  std::map<std::string, DataShard> shards;
  for (const auto& [institution, ids] : table.entries()) {
    if (ids.empty()) continue;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(Stream::kSiteData), hash_key(institution)}));
    const auto shift = blobs.draw_site_shift(rng);
    shards.emplace(institution, blobs.sample(ids, shift, rng));
  }
  return shards;
}

Cohort generate_synthetic_cohort(const SyntheticCohortSpec& spec, std::uint64_t seed, const BlobSpec& blobs) {
  auto table = synthetic_partition(spec, seed);
  const BlobGenerator generator(blobs, derive_seed(seed, Stream::kBlobCenters));
  auto shards = synthesize_shards(table, generator, seed);
  return Cohort{std::move(table), std::move(shards)};
}

}  // namespace fedpod
