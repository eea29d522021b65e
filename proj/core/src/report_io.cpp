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
#include "fedpod/report_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <vector>

#include "fedpod/errors.hpp"

namespace fedpod {
namespace {

void put_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

bool get_u64_le(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return true;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

std::string fallback_flags(const RoundRecord& record) {
  if (record.derivative_fallback && record.integral_fallback) return "K+I";
  if (record.derivative_fallback) return "K";
  if (record.integral_fallback) return "I";
  return "none";
}

void write_metrics_csv(const ExperimentReport& report, std::ostream& out) {
  out << kMetricsCsvHeader << '\n';
  for (const auto& r : report.records) {
    std::string dropped;
    for (const auto& id : r.dropped) dropped += (dropped.empty() ? "" : ";") + id;
    out << r.round_index << ',' << r.phase << ',' << r.participants.size() << ',' << dropped;
    for (double d : r.class_dice) out << ',' << format_double(d);
    out << ',' << format_double(r.mean_dice) << ',' << format_double(r.best_dice) << ','
        << format_double(r.round_time_s) << ',' << format_double(r.cumulative_time_s) << ','
        << format_double(r.convergence_score) << ',' << fallback_flags(r) << '\n';
  }
}

void write_summary(const ExperimentReport& report, std::ostream& out) {
  const auto& s = report.summary;
  auto join = [](const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ",") + id;
    return out;
  };
  out << "lambda = " << format_double(s.lambda) << '\n'
      << "threshold = " << format_double(s.threshold) << '\n'
      << "primary = " << join(s.primary) << '\n'
      << "secondary = " << join(s.secondary) << '\n'
      << "rounds_completed = " << s.rounds_completed << '\n'
      << "total_time_s = " << format_double(s.total_time_s) << '\n'
      << "final_mean_dice = " << format_double(s.final_mean_dice) << '\n'
      << "best_dice = " << format_double(s.best_dice) << '\n'
      << "convergence_score = " << format_double(s.convergence_score) << '\n'
      << "model_dim = " << report.final_model.dim() << '\n';
  std::size_t shortfalls = 0;
  for (const auto& r : report.records) shortfalls += r.secondary_shortfall;
  out << "secondary_shortfall_rounds = " << shortfalls << '\n';
}

void write_model_binary(const ModelParams& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  put_u64_le(out, model.dim());
  for (double v : model.values()) put_u64_le(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ModelParams read_model_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  std::uint64_t dim = 0;
  if (!get_u64_le(in, dim)) throw ValidationError("model file '" + path.string() + "' is truncated");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(dim, 1u << 24)));
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t bits = 0;
    if (!get_u64_le(in, bits)) throw ValidationError("model file '" + path.string() + "' is truncated");
    values.push_back(std::bit_cast<double>(bits));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ValidationError("model file '" + path.string() + "' has trailing bytes");
  }
  return ModelParams(std::move(values));
}

}  // namespace fedpod
