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

#include "tlvd/config.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

constexpr std::array<NoiseSchedule, 5> kSchedules{{
    {5.0, 0.68, 1},
    {10.0, 0.72, 2},
    {15.0, 0.76, 3},
    {20.0, 0.83, 3},
    {50.0, 0.89, 4},
}};

[[noreturn]] void reject(const std::string& what) { throw ConfigError(what); }

}  // namespace

NoiseSchedule default_schedule(double sigma) {
  const NoiseSchedule* best = &kSchedules[0];
  for (const NoiseSchedule& s : kSchedules) {
    if (std::abs(s.sigma - sigma) < std::abs(best->sigma - sigma)) best = &s;
  }
  return *best;
}

int DenoiseConfig::effective_minibatch_size() const {
  return minibatch_size > 0 ? minibatch_size : 15 * patch_size();
}

double DenoiseConfig::effective_rho() const {
  return rho ? *rho : default_schedule(sigma).rho;
}

int DenoiseConfig::effective_passes() const {
  return passes ? *passes : default_schedule(sigma).passes;
}

bool DenoiseConfig::uses_sparsity_weights() const {
  switch (weighting) {
    case Weighting::kSparsity:
      return true;
    case Weighting::kUniform:
      return false;
    case Weighting::kAuto:
      break;
  }
  return mode == Mode::kBlockMatched;
}

PatchGeometry DenoiseConfig::geometry(int frame_h, int frame_w) const {
  return PatchGeometry{n1, n2, m, frame_h, frame_w, stride};
}

void DenoiseConfig::validate(int frame_h, int frame_w) const {
  std::ostringstream msg;
  if (n1 <= 0 || n2 <= 0 || m <= 0) {
    reject("patch dimensions n1, n2, m must be positive");
  }
  if (stride <= 0) reject("spatial stride must be positive");
  if (mode == Mode::kBlockMatched && m % 2 == 0) {
    msg << "block matching requires an odd temporal depth m (got m=" << m
        << ")";
    reject(msg.str());
  }
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    reject("alpha0 must be a finite non-negative number");
  }
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
    reject("lambda0 must be a finite positive number");
  }
  if (minibatch_size < 0) reject("mini-batch size must be positive");
  if (rho && !(*rho > 0.0 && *rho <= 1.0)) {
    reject("forgetting factor rho must lie in (0, 1]");
  }
  if (passes && *passes <= 0) reject("number of passes must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    reject("sigma must be a finite positive number");
  }
  if (mode == Mode::kBlockMatched && (h1 < n1 || h2 < n2)) {
    reject("search window h1 x h2 must be at least the patch size");
  }
  if (alternations <= 0) reject("alternations must be positive");
  if (workers <= 0) reject("worker count must be positive");
  if (frame_h > 0 && frame_w > 0) geometry(frame_h, frame_w).validate();
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kPatch:
      return "a1";
    case Mode::kBlockMatched:
      return "a2";
    case Mode::kFixedDct:
      return "dct3d";
  }
  return "?";
}

std::string_view to_string(LeftoverPolicy policy) {
  return policy == LeftoverPolicy::kCarryOver ? "carry" : "partial";
}

std::string_view to_string(BmSource source) {
  return source == BmSource::kPrecleaned ? "precleaned" : "noisy";
}

std::string_view to_string(Weighting weighting) {
  switch (weighting) {
    case Weighting::kAuto:
      return "auto";
    case Weighting::kUniform:
      return "uniform";
    case Weighting::kSparsity:
      return "sparsity";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "a1") return Mode::kPatch;
  if (name == "a2") return Mode::kBlockMatched;
  if (name == "dct3d") return Mode::kFixedDct;
  reject("unknown mode '" + std::string(name) + "' (expected a1, a2, dct3d)");
}

LeftoverPolicy parse_leftover(std::string_view name) {
  if (name == "carry") return LeftoverPolicy::kCarryOver;
  if (name == "partial") return LeftoverPolicy::kPartialBatch;
  reject("unknown leftover policy '" + std::string(name) +
         "' (expected carry, partial)");
}

BmSource parse_bm_source(std::string_view name) {
  if (name == "precleaned") return BmSource::kPrecleaned;
  if (name == "noisy") return BmSource::kNoisy;
  reject("unknown block-matching source '" + std::string(name) +
         "' (expected precleaned, noisy)");
}

Weighting parse_weighting(std::string_view name) {
  if (name == "auto") return Weighting::kAuto;
  if (name == "uniform") return Weighting::kUniform;
  if (name == "sparsity") return Weighting::kSparsity;
  reject("unknown weighting '" + std::string(name) +
         "' (expected auto, uniform, sparsity)");
}

}  // namespace tlvd
