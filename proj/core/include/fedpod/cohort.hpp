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
#include <map>
#include <string>
#include <vector>

#include "fedpod/data.hpp"

namespace fedpod {

// Institution id -> sample ids. Sample ids are globally unique and kept
// sorted within each institution.
class PartitionTable {
 public:
  using Entries = std::map<std::string, std::vector<std::string>>;

  explicit PartitionTable(Entries entries);

  const Entries& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t total() const noexcept { return total_; }

  bool contains(const std::string& institution) const { return entries_.contains(institution); }
  std::size_t count(const std::string& institution) const { return sample_ids(institution).size(); }
  const std::vector<std::string>& sample_ids(const std::string& institution) const;

  bool operator==(const PartitionTable&) const = default;

 private:
  Entries entries_;
  std::size_t total_ = 0;
};

struct PoissonModel {
  double lambda;

  explicit PoissonModel(double lambda);
};

// e^-lambda lambda^x / x!, evaluated in log space.
double poisson_pmf(std::uint64_t x, double lambda);

// Maximum-likelihood fit: the mean institution count.
PoissonModel fit_poisson(const PartitionTable& table);

struct SyntheticCohortSpec {
  int institutions = 23;
  double lambda = 30.0;
  int outliers = 3;
  double outlier_scale = 10.0;

  void validate() const;
};

// Counts only. Institution ids are zero-padded indices starting at 1 and
// the last spec.outliers institutions are the outliers.
PartitionTable synthetic_partition(const SyntheticCohortSpec& spec, std::uint64_t seed);

// Features and labels for every sample id in the table, one site shift per
// institution.
std::map<std::string, DataShard> synthesize_shards(const PartitionTable& table, const BlobGenerator& blobs,
                                                   std::uint64_t seed);

struct Cohort {
  PartitionTable table;
  std::map<std::string, DataShard> shards;
};

Cohort generate_synthetic_cohort(const SyntheticCohortSpec& spec, std::uint64_t seed,
                                 const BlobSpec& blobs = {});

}  // namespace fedpod
