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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "fedpod/aggregation.hpp"
#include "fedpod/engine.hpp"
#include "fedpod/surrogate.hpp"

namespace {

using namespace fedpod;

std::vector<LocalUpdate> make_updates(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<LocalUpdate> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> params(dim);
    for (auto& p : params) p = u(rng);
    const double pre = u(rng) + 1.0, post = u(rng);
    out.push_back(LocalUpdate{.node_id = "n" + std::to_string(j),
                              .params = ModelParams(std::move(params)),
                              .data_size = 10 + j,
                              .pre_cost = pre,
                              .post_cost = post,
                              .trajectory = CostTrajectory::linear(pre, post),
                              .timings = {}});
  }
  return out;
}

void BM_FedPodWeights(benchmark::State& state) {
  const auto updates = make_updates(static_cast<std::size_t>(state.range(0)), 36);
  const AggregationStrategy strategy;
  for (auto _ : state) benchmark::DoNotOptimize(fedpod_weights(updates, strategy));
}
BENCHMARK(BM_FedPodWeights)->Arg(6)->Arg(12)->Arg(23);

void BM_Aggregate(benchmark::State& state) {
  const auto updates = make_updates(12, static_cast<std::size_t>(state.range(0)));
  const auto weights = fedavg_weights(updates).weights;
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(updates, weights));
}
BENCHMARK(BM_Aggregate)->Arg(36)->Arg(4096);

void BM_TrainLocal(benchmark::State& state) {
  const BlobGenerator blobs(BlobSpec{}, 2);
  Rng rng(3);
  std::vector<std::string> ids;
  for (int i = 0; i < state.range(0); ++i) ids.push_back(std::to_string(i));
  const auto shard = blobs.sample(ids, {}, rng);
  const auto val = shard.window(0, ids.size() / 5 + 1);
  const auto start = ModelParams::zeros(SoftmaxClassifier::for_shard(shard).param_dim());
  const TrainConfig cfg{.epochs = 4, .learning_rate = 1e-3, .seed = 4, .batch_size = 8};
  for (auto _ : state) benchmark::DoNotOptimize(train_local(start, shard, val, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.epochs);
}
BENCHMARK(BM_TrainLocal)->Arg(30)->Arg(300);

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig config;
  config.seed = 5;
  const auto data = prepare_data(config);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config, data));
}
BENCHMARK(BM_RunExperiment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
