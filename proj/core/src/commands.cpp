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
#include "fedpod/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <string>

#include "fedpod/config.hpp"
#include "fedpod/errors.hpp"
#include "fedpod/report_io.hpp"

namespace fedpod::cli {
namespace {

std::ofstream open_output(RunManifest& manifest, const std::filesystem::path& name) {
  const auto path = manifest.output_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  manifest.artifacts.push_back(path);
  return out;
}

void write_manifest(RunManifest& manifest) {
  const auto path = manifest.output_dir / "manifest.txt";
  manifest.artifacts.push_back(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << "config = " << (manifest.config_path ? manifest.config_path->string() : std::string("<defaults>")) << '\n';
  out << "output_dir = " << manifest.output_dir.string() << '\n';
  for (const auto& artifact : manifest.artifacts) out << "artifact = " << artifact.string() << '\n';
}

void write_phases_csv(const ExperimentReport& report, std::ostream& out) {
  out << "round,phase,n_nodes,n_merged,epochs\n";
  for (const auto& r : report.records) {
    out << r.round_index << ',' << r.phase << ',' << r.participants.size() << ',' << r.merged.size() << ','
        << r.epochs << '\n';
  }
}

}  // namespace

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path) {
  ExperimentConfig config = path ? parse_config(*path) : ExperimentConfig{};
  if (const char* env = std::getenv("FEDPOD_SEED"); env != nullptr && *env != '\0') {
    const std::string_view v(env);
    std::uint64_t seed = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
    if (ec != std::errc() || end != v.data() + v.size()) {
      throw ValidationError("FEDPOD_SEED must be an unsigned integer, got '" + std::string(v) + "'");
    }
    config.seed = seed;
  }
  config.validate();
  return config;
}

ExperimentReport run(RunManifest& manifest) {
  std::filesystem::create_directories(manifest.output_dir);
  ExperimentReport report = run_experiment(manifest.config);

  {
    auto out = open_output(manifest, "metrics.csv");
    write_metrics_csv(report, out);
  }
  {
    auto out = open_output(manifest, "phases.csv");
    write_phases_csv(report, out);
  }
  {
    auto out = open_output(manifest, "summary.txt");
    write_summary(report, out);
  }
  {
    auto out = open_output(manifest, "config.resolved");
    out << format_config(manifest.config);
  }
  write_model_binary(report.final_model, manifest.output_dir / "model.bin");
  manifest.artifacts.push_back(manifest.output_dir / "model.bin");
  write_manifest(manifest);
  return report;
}

std::vector<ExperimentReport> compare(RunManifest& manifest, const std::vector<StrategyKind>& strategies) {
  if (strategies.empty()) throw ValidationError("compare: no strategies given");
  std::filesystem::create_directories(manifest.output_dir);
  std::vector<ExperimentReport> reports;
  for (StrategyKind kind : strategies) {
    RunManifest sub{manifest.config_path, manifest.config, manifest.output_dir / std::string(to_string(kind)), {}};
    sub.config.strategy.kind = kind;
    reports.push_back(run(sub));
    manifest.artifacts.insert(manifest.artifacts.end(), sub.artifacts.begin(), sub.artifacts.end());
  }

  auto out = open_output(manifest, "comparison.csv");
  out << "round";
  for (StrategyKind kind : strategies) {
    const auto name = to_string(kind);
    out << ',' << name << "_mean_dice," << name << "_best_dice," << name << "_round_time_s," << name
        << "_convergence_score";
  }
  out << '\n';
  std::size_t rounds = 0;
  for (const auto& r : reports) rounds = std::max(rounds, r.records.size());
  for (std::size_t i = 0; i < rounds; ++i) {
    out << i + 1;
    for (const auto& r : reports) {
      if (i < r.records.size()) {
        const auto& rec = r.records[i];
        out << ',' << format_double(rec.mean_dice) << ',' << format_double(rec.best_dice) << ','
            << format_double(rec.round_time_s) << ',' << format_double(rec.convergence_score);
      } else {
        out << ",,,,";
      }
    }
    out << '\n';
  }
  out.close();
  write_manifest(manifest);
  return reports;
}

void plot_data(RunManifest& manifest, const std::vector<StrategyKind>& strategies) {
  if (strategies.empty()) throw ValidationError("plot-data: no strategies given");
  std::filesystem::create_directories(manifest.output_dir);
  for (StrategyKind kind : strategies) {
    ExperimentConfig config = manifest.config;
    config.strategy.kind = kind;
    const ExperimentReport report = run_experiment(config);
    const std::string name(to_string(kind));
    {
      auto out = open_output(manifest, name + "_mean_dice.csv");
      out << "round,mean_dice\n";
      for (const auto& r : report.records) out << r.round_index << ',' << format_double(r.mean_dice) << '\n';
    }
    {
      auto out = open_output(manifest, name + "_label_dice.csv");
      out << "round,dice_label1,dice_label2,dice_label4\n";
      for (const auto& r : report.records) {
        out << r.round_index;
        for (double d : r.class_dice) out << ',' << format_double(d);
        out << '\n';
      }
    }
    {
      auto out = open_output(manifest, name + "_convergence.csv");
      out << "round,convergence_score\n";
      for (const auto& r : report.records) out << r.round_index << ',' << format_double(r.convergence_score) << '\n';
    }
  }
  write_manifest(manifest);
}

std::vector<StrategyKind> parse_strategy_list(const std::string& csv) {
  std::vector<StrategyKind> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      const auto kind = parse_strategy_kind(item);
      if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ValidationError("no strategies in '" + csv + "'");
  return out;
}

}  // namespace fedpod::cli
