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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tlvd/patches.hpp"

namespace tlvd {

enum class Mode {
  kPatch,         // co-located 3D patches with a learned transform ("a1")
  kBlockMatched,  // block-matched 3D patches with a learned transform ("a2")
  kFixedDct,      // co-located patches, transform fixed to the 3D DCT ("dct3d")
};

// What happens to the patches left over when a buffer's patch count is not
// a multiple of the mini-batch size.
enum class LeftoverPolicy {
  // Denoised immediately with the current transform, then carried into the
  // next buffer's first mini-batch for learning.
  kCarryOver,
  // Processed as a short final mini-batch of the buffer.
  kPartialBatch,
};

// Buffer from which block-matched patch values are read.
enum class BmSource { kPrecleaned, kNoisy };

enum class Weighting {
  kAuto,      // uniform for co-located modes, sparsity for block matching
  kUniform,
  kSparsity,  // patch_weight() of the final sparse code
};

// Forgetting factor and pass count associated with a noise level.
struct NoiseSchedule {
  double sigma;
  double rho;
  int passes;
};

// Schedule of the nearest tabulated noise level (5, 10, 15, 20, 50). A
// sigma exactly halfway between two entries takes the lower one.
NoiseSchedule default_schedule(double sigma);

struct DenoiseConfig {
  int n1 = 8;
  int n2 = 8;
  int m = 9;
  int stride = 1;
  double alpha0 = 1.9;
  double lambda0 = 1e-2;
  // 0 selects 15 * n1 * n2 * m.
  int minibatch_size = 0;
  // Unset values follow default_schedule(sigma).
  std::optional<double> rho;
  std::optional<int> passes;
  // Noise standard deviation on the 0-255 pixel scale.
  double sigma = 20.0;
  int h1 = 21;
  int h2 = 21;
  Mode mode = Mode::kPatch;
  std::uint64_t seed = 0;
  bool preclean = true;
  BmSource bm_source = BmSource::kNoisy;
  Weighting weighting = Weighting::kAuto;
  LeftoverPolicy leftover = LeftoverPolicy::kCarryOver;
  bool carry_learner_across_passes = false;
  int alternations = 1;
  int workers = 1;

  int patch_size() const { return n1 * n2 * m; }
  int effective_minibatch_size() const;
  double effective_rho() const;
  int effective_passes() const;
  bool uses_sparsity_weights() const;

  PatchGeometry geometry(int frame_h, int frame_w) const;

  // Throws ConfigError on invalid settings (including an even m in
  // block-matching mode). Frame dimensions are checked when positive.
  void validate(int frame_h = 0, int frame_w = 0) const;
};

std::string_view to_string(Mode mode);
std::string_view to_string(LeftoverPolicy policy);
std::string_view to_string(BmSource source);
std::string_view to_string(Weighting weighting);

// Parses the command-line spellings ("a1", "a2", "dct3d", ...). Throws
// ConfigError for unknown names.
Mode parse_mode(std::string_view name);
LeftoverPolicy parse_leftover(std::string_view name);
BmSource parse_bm_source(std::string_view name);
Weighting parse_weighting(std::string_view name);

}  // namespace tlvd
