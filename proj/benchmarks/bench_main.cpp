// Copyright 2026 The tlvd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tlvd/blockmatch.hpp"
#include "tlvd/config.hpp"
#include "tlvd/dct.hpp"
#include "tlvd/pipeline.hpp"
#include "tlvd/transform.hpp"

namespace {

using tlvd::Matrix;
using tlvd::Plane;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                     Eigen::Index cols, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  return a;
}

std::vector<Plane> random_frames(int count, int h, int w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  std::vector<Plane> out;
  for (int t = 0; t < count; ++t) {
    Plane p(h, w);
    for (double& v : p.pixels()) v = dist(rng);
    out.push_back(std::move(p));
  }
  return out;
}

tlvd::MiniBatch random_batch(std::mt19937_64& rng, int n, int cols) {
  tlvd::MiniBatch batch;
  batch.columns = random_matrix(rng, n, cols, 30.0);
  batch.alphas = Eigen::VectorXd::Constant(cols, 38.0);
  return batch;
}

// Arg: patch side, with depth equal to side (n = side^3).
void BM_TransformUpdate(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int n = side * side * side;
  std::mt19937_64 rng(1);
  tlvd::LearnerState learner =
      tlvd::make_learner(tlvd::dct3d_matrix(side, side, side), 0.8, 1e-2);
  tlvd::accumulate(learner, random_batch(rng, n, 15 * n),
                   tlvd::sparse_code(learner, random_batch(rng, n, 15 * n)));
  for (auto _ : state) {
    tlvd::LearnerState copy = learner;
    tlvd::transform_update(copy);
    benchmark::DoNotOptimize(copy.w.data());
  }
}
BENCHMARK(BM_TransformUpdate)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SparseCode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int n = side * side * side;
  std::mt19937_64 rng(2);
  const tlvd::LearnerState learner =
      tlvd::make_learner(tlvd::dct3d_matrix(side, side, side), 0.8, 1e-2);
  const tlvd::MiniBatch batch = random_batch(rng, n, 15 * n);
  for (auto _ : state) {
    tlvd::SparseCodes codes = tlvd::sparse_code(learner, batch);
    benchmark::DoNotOptimize(codes.columns.data());
  }
  state.SetItemsProcessed(state.iterations() * batch.columns.cols());
}
BENCHMARK(BM_SparseCode)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_BlockMatch(benchmark::State& state) {
  const int window = static_cast<int>(state.range(0));
  tlvd::PatchGeometry g{8, 8, 9, 64, 64, 1};
  const std::vector<Plane> buffer = random_frames(9, 64, 64, 3);
  for (auto _ : state) {
    tlvd::BmRecord rec =
        tlvd::block_match(buffer, g, {28, 28}, window, window);
    benchmark::DoNotOptimize(rec.slots.data());
  }
}
BENCHMARK(BM_BlockMatch)->Arg(11)->Arg(21)->Arg(31);

// Arg: frame side. Measures one steady-state frame of co-located denoising.
void BM_PushFrame(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  tlvd::DenoiseConfig config;
  config.n1 = config.n2 = 4;
  config.m = 5;
  config.sigma = 20.0;
  const std::vector<Plane> frames = random_frames(8, side, side, 4);
  tlvd::StreamingDenoiser engine(config, side, side, config.sigma);
  for (int t = 0; t < config.m; ++t) engine.push_frame(frames[t]);
  std::size_t next = 0;
  for (auto _ : state) {
    auto out = engine.push_frame(frames[next]);
    benchmark::DoNotOptimize(out);
    next = (next + 1) % frames.size();
  }
}
BENCHMARK(BM_PushFrame)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
