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
#include "fedpod/timing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fedpod/errors.hpp"

namespace fedpod {

void TimingModel::validate() const {
  for (double v : {download_s, per_sample_train_s, per_sample_val_s, jitter_sigma}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("timing: parameters must be finite and >= 0");
  }
}

TimingSample sample_timings(const TimingModel& model, std::size_t quota, int epochs, std::size_t val_size,
                            double slowdown, Rng& rng) {
  if (quota < 1) throw ValidationError("sample_timings: quota must be >= 1");
  if (!(slowdown > 0.0) || !std::isfinite(slowdown)) throw ValidationError("sample_timings: slowdown must be > 0");
  std::normal_distribution<double> normal(0.0, 1.0);
  // Four draws per call regardless of sigma so streams stay aligned.
  auto jitter = [&] {
    const double g = normal(rng);
    return model.jitter_sigma == 0.0 ? 1.0 : std::exp(model.jitter_sigma * g);
  };
  TimingSample t;
  t.download_s = model.download_s * jitter() * slowdown;
  t.pre_val_s = static_cast<double>(val_size) * model.per_sample_val_s * jitter() * slowdown;
  t.train_s = static_cast<double>(quota) * epochs * model.per_sample_train_s * jitter() * slowdown;
  t.post_val_s = static_cast<double>(val_size) * model.per_sample_val_s * jitter() * slowdown;
  return t;
}

std::set<std::string> detect_stragglers(std::span<const NodeTiming> timings, double timeout_factor) {
  if (timings.empty()) throw ValidationError("detect_stragglers: no timings");
  if (!(timeout_factor > 1.0)) throw ValidationError("detect_stragglers: timeout_factor must exceed 1");
  std::vector<double> totals;
  totals.reserve(timings.size());
  for (const auto& [id, t] : timings) totals.push_back(t.total());
  std::sort(totals.begin(), totals.end());
  const std::size_t n = totals.size();
  const double median = n % 2 == 1 ? totals[n / 2] : (totals[n / 2 - 1] + totals[n / 2]) / 2.0;

  std::set<std::string> out;
  for (const auto& [id, t] : timings) {
    if (t.total() > timeout_factor * median) out.insert(id);
  }
  return out;
}

double round_time(std::span<const TimingSample> timings) {
  if (timings.empty()) throw ValidationError("round_time: no timings");
  TimingSample peak;
  for (const auto& t : timings) {
    peak.download_s = std::max(peak.download_s, t.download_s);
    peak.pre_val_s = std::max(peak.pre_val_s, t.pre_val_s);
    peak.train_s = std::max(peak.train_s, t.train_s);
    peak.post_val_s = std::max(peak.post_val_s, t.post_val_s);
  }
  return peak.download_s + peak.pre_val_s + peak.train_s + peak.post_val_s;
}

}  // namespace fedpod
