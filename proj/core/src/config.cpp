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
#include "fedpod/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fedpod/errors.hpp"
#include "fedpod/report_io.hpp"

namespace fedpod {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Thrown by value converters; rethrown with source, line and key.
struct BadValue {
  std::string what;
};

double to_double(std::string_view v) {
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) throw BadValue{"expected a number, got '" + std::string(v) + "'"};
  return out;
}

long long to_int(std::string_view v) {
  long long out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) {
    throw BadValue{"expected an integer, got '" + std::string(v) + "'"};
  }
  return out;
}

int to_int32(std::string_view v) {
  const long long x = to_int(v);
  if (x < -2147483647LL || x > 2147483647LL) throw BadValue{"integer out of range"};
  return static_cast<int>(x);
}

std::size_t to_size(std::string_view v) {
  const long long x = to_int(v);
  if (x < 0) throw BadValue{"expected a non-negative integer"};
  return static_cast<std::size_t>(x);
}

std::uint64_t to_u64(std::string_view v) {
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) {
    throw BadValue{"expected an unsigned integer, got '" + std::string(v) + "'"};
  }
  return out;
}

bool to_bool(std::string_view v) {
  const auto s = lower(v);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw BadValue{"expected true or false, got '" + std::string(v) + "'"};
}

std::vector<std::string_view> split(std::string_view v, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = v.find(sep, start);
    out.push_back(trim(v.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"seed", [](auto& c, auto v) { c.seed = to_u64(v); }},
      {"max_rounds", [](auto& c, auto v) { c.max_rounds = to_int32(v); }},
      {"max_simulated_time_s", [](auto& c, auto v) { c.max_simulated_time_s = to_double(v); }},
      {"cohort.source",
       [](auto& c, auto v) {
         const auto s = lower(v);
         if (s == "synthetic") {
           c.partition_csv.reset();
         } else if (s != "csv") {
           throw BadValue{"expected synthetic or csv"};
         }
       }},
      {"cohort.partition_csv", [](auto& c, auto v) { c.partition_csv = std::filesystem::path(std::string(v)); }},
      {"cohort.institutions", [](auto& c, auto v) { c.synthetic.institutions = to_int32(v); }},
      {"cohort.lambda", [](auto& c, auto v) { c.synthetic.lambda = to_double(v); }},
      {"cohort.outliers", [](auto& c, auto v) { c.synthetic.outliers = to_int32(v); }},
      {"cohort.outlier_scale", [](auto& c, auto v) { c.synthetic.outlier_scale = to_double(v); }},
      {"data.feature_dim", [](auto& c, auto v) { c.data.feature_dim = to_size(v); }},
      {"data.class_separation", [](auto& c, auto v) { c.data.class_separation = to_double(v); }},
      {"data.noise_sigma", [](auto& c, auto v) { c.data.noise_sigma = to_double(v); }},
      {"data.site_shift_sigma", [](auto& c, auto v) { c.data.site_shift_sigma = to_double(v); }},
      {"data.class_priors",
       [](auto& c, auto v) {
         c.data.class_priors.clear();
         for (auto part : split(v, ',')) c.data.class_priors.push_back(to_double(part));
       }},
      {"data.holdout_fraction", [](auto& c, auto v) { c.holdout_fraction = to_double(v); }},
      {"data.local_val_fraction", [](auto& c, auto v) { c.local_val_fraction = to_double(v); }},
      {"selection.mode",
       [](auto& c, auto v) {
         const auto s = lower(v);
         if (s == "poisson") {
           c.selection = SelectionMode::kPoisson;
         } else if (s == "full") {
           c.selection = SelectionMode::kFull;
         } else {
           throw BadValue{"expected poisson or full"};
         }
       }},
      {"selection.z", [](auto& c, auto v) { c.z = to_double(v); }},
      {"selection.margin", [](auto& c, auto v) { c.margin_fraction = to_double(v); }},
      {"strategy.kind",
       [](auto& c, auto v) {
         try {
           c.strategy.kind = parse_strategy_kind(v);
         } catch (const ValidationError& e) {
           throw BadValue{e.what()};
         }
       }},
      {"strategy.alpha", [](auto& c, auto v) { c.strategy.alpha = to_double(v); }},
      {"strategy.beta", [](auto& c, auto v) { c.strategy.beta = to_double(v); }},
      {"strategy.gamma", [](auto& c, auto v) { c.strategy.gamma = to_double(v); }},
      {"strategy.history_window", [](auto& c, auto v) { c.strategy.history_window = to_int32(v); }},
      {"train.batch_size", [](auto& c, auto v) { c.batch_size = to_size(v); }},
      {"timing.download_s", [](auto& c, auto v) { c.timing.download_s = to_double(v); }},
      {"timing.per_sample_train_s", [](auto& c, auto v) { c.timing.per_sample_train_s = to_double(v); }},
      {"timing.per_sample_val_s", [](auto& c, auto v) { c.timing.per_sample_val_s = to_double(v); }},
      {"timing.jitter_sigma", [](auto& c, auto v) { c.timing.jitter_sigma = to_double(v); }},
      {"straggler.timeout_factor", [](auto& c, auto v) { c.stragglers.timeout_factor = to_double(v); }},
      {"straggler.drop", [](auto& c, auto v) { c.stragglers.drop = to_bool(v); }},
      {"straggler.inject",
       [](auto& c, auto v) {
         c.stragglers.slowdown.clear();
         if (v.empty()) return;
         for (auto item : split(v, ',')) {
           const auto colon = item.rfind(':');
           if (colon == std::string_view::npos) throw BadValue{"expected node:factor entries"};
           const std::string id(trim(item.substr(0, colon)));
           if (id.empty()) throw BadValue{"empty node id in straggler.inject"};
           c.stragglers.slowdown[id] = to_double(trim(item.substr(colon + 1)));
         }
       }},
  };
  return table;
}

// schedule.<n>.<field>
bool set_schedule_field(std::map<int, PhaseEntry>& phases, std::string_view key, std::string_view value) {
  constexpr std::string_view prefix = "schedule.";
  if (!key.starts_with(prefix)) return false;
  const auto rest = key.substr(prefix.size());
  const auto dot = rest.find('.');
  if (dot == std::string_view::npos) return false;
  int index = 0;
  const auto idx = rest.substr(0, dot);
  const auto [end, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
  if (ec != std::errc() || end != idx.data() + idx.size() || index < 1) return false;

  PhaseEntry& p = phases[index];
  const auto field = rest.substr(dot + 1);
  if (field == "rounds") {
    const auto dash = value.find('-');
    if (dash == std::string_view::npos) {
      p.first_round = to_int32(value);
      p.last_round = p.first_round;
    } else {
      p.first_round = to_int32(trim(value.substr(0, dash)));
      const auto hi = trim(value.substr(dash + 1));
      if (hi.empty()) {
        p.last_round.reset();
      } else {
        p.last_round = to_int32(hi);
      }
    }
  } else if (field == "primary") {
    p.n_primary = to_int32(value);
  } else if (field == "secondary") {
    p.n_secondary = to_int32(value);
  } else if (field == "learning_rate") {
    p.learning_rate = to_double(value);
  } else if (field == "epochs") {
    p.epochs = to_int32(value);
  } else {
    return false;
  }
  return true;
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text, const std::string& source_name) {
  ExperimentConfig config;
  std::map<int, PhaseEntry> phases;
  std::set<std::string> seen;
  bool csv_source = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source_name, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(source_name, line_no, "empty key");
    if (!seen.insert(key).second) throw ParseError(source_name, line_no, "duplicate key '" + key + "'");

    try {
      if (auto it = setters().find(key); it != setters().end()) {
        it->second(config, value);
        if (key == "cohort.source") csv_source = lower(value) == "csv";
      } else if (!set_schedule_field(phases, key, value)) {
        throw ParseError(source_name, line_no, "unknown key '" + key + "'");
      }
    } catch (const BadValue& e) {
      throw ParseError(source_name, line_no, key + ": " + e.what);
    }
  }

  if (csv_source && !config.partition_csv) {
    throw ValidationError(source_name + ": cohort.source = csv requires cohort.partition_csv");
  }
  if (seen.contains("cohort.source") && !csv_source && config.partition_csv) {
    throw ValidationError(source_name + ": cohort.partition_csv given with cohort.source = synthetic");
  }

  if (!phases.empty()) {
    config.schedule.clear();
    int expected_index = 1;
    for (auto& [index, phase] : phases) {
      if (index != expected_index++) {
        throw ValidationError(source_name + ": schedule phases must be numbered 1, 2, ... without gaps");
      }
      config.schedule.push_back(phase);
    }
  }

  try {
    config.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source_name + ": " + e.what());
  }
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config = parse_config_text(buffer.str(), path.string());
  if (config.partition_csv && config.partition_csv->is_relative()) {
    config.partition_csv = path.parent_path() / *config.partition_csv;
  }
  return config;
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  put("seed", std::to_string(c.seed));
  put("max_rounds", std::to_string(c.max_rounds));
  put("max_simulated_time_s", format_double(c.max_simulated_time_s));
  if (c.partition_csv) {
    put("cohort.source", "csv");
    put("cohort.partition_csv", c.partition_csv->string());
  } else {
    put("cohort.source", "synthetic");
  }
  put("cohort.institutions", std::to_string(c.synthetic.institutions));
  put("cohort.lambda", format_double(c.synthetic.lambda));
  put("cohort.outliers", std::to_string(c.synthetic.outliers));
  put("cohort.outlier_scale", format_double(c.synthetic.outlier_scale));
  put("data.feature_dim", std::to_string(c.data.feature_dim));
  put("data.class_separation", format_double(c.data.class_separation));
  put("data.noise_sigma", format_double(c.data.noise_sigma));
  put("data.site_shift_sigma", format_double(c.data.site_shift_sigma));
  std::string priors;
  for (std::size_t i = 0; i < c.data.class_priors.size(); ++i) {
    priors += (i ? "," : "") + format_double(c.data.class_priors[i]);
  }
  put("data.class_priors", priors);
  put("data.holdout_fraction", format_double(c.holdout_fraction));
  put("data.local_val_fraction", format_double(c.local_val_fraction));
  put("selection.mode", c.selection == SelectionMode::kPoisson ? "poisson" : "full");
  put("selection.z", format_double(c.z));
  put("selection.margin", format_double(c.margin_fraction));
  put("strategy.kind", std::string(to_string(c.strategy.kind)));
  put("strategy.alpha", format_double(c.strategy.alpha));
  put("strategy.beta", format_double(c.strategy.beta));
  put("strategy.gamma", format_double(c.strategy.gamma));
  put("strategy.history_window", std::to_string(c.strategy.history_window));
  put("train.batch_size", std::to_string(c.batch_size));
  for (std::size_t i = 0; i < c.schedule.size(); ++i) {
    const auto& p = c.schedule[i];
    const std::string prefix = "schedule." + std::to_string(i + 1) + ".";
    put(prefix + "rounds",
        std::to_string(p.first_round) + "-" + (p.last_round ? std::to_string(*p.last_round) : std::string()));
    put(prefix + "primary", std::to_string(p.n_primary));
    put(prefix + "secondary", std::to_string(p.n_secondary));
    put(prefix + "learning_rate", format_double(p.learning_rate));
    put(prefix + "epochs", std::to_string(p.epochs));
  }
  put("timing.download_s", format_double(c.timing.download_s));
  put("timing.per_sample_train_s", format_double(c.timing.per_sample_train_s));
  put("timing.per_sample_val_s", format_double(c.timing.per_sample_val_s));
  put("timing.jitter_sigma", format_double(c.timing.jitter_sigma));
  put("straggler.timeout_factor", format_double(c.stragglers.timeout_factor));
  put("straggler.drop", c.stragglers.drop ? "true" : "false");
  std::string inject;
  for (const auto& [id, factor] : c.stragglers.slowdown) {
    inject += (inject.empty() ? "" : ",") + id + ":" + format_double(factor);
  }
  put("straggler.inject", inject);
  return out.str();
}

}  // namespace fedpod
