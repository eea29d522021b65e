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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace fedpod {

using Rng = std::mt19937_64;

// Independent random streams are derived from the experiment seed and a
// stream key, so adding or removing a consumer never perturbs another one.
enum class Stream : std::uint64_t {
  kCohortCounts = 1,
  kBlobCenters = 2,
  kSiteData = 3,
  kLocalValidation = 4,
  kHoldout = 5,
  kSecondarySelection = 6,
  kTraining = 7,
  kTiming = 8,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t hash_key(std::string_view key) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t s = splitmix64(seed);
  for (std::uint64_t k : keys) s = splitmix64(s ^ splitmix64(k));
  return s;
}

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return derive_seed(seed, {static_cast<std::uint64_t>(stream)});
}

}  // namespace fedpod
