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
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tlvd/blockmatch.hpp"
#include "tlvd/config.hpp"
#include "tlvd/frame.hpp"
#include "tlvd/patches.hpp"
#include "tlvd/scheduler.hpp"
#include "tlvd/transform.hpp"

namespace tlvd {

// m-deep FIFO of the most recent input frames, oldest first.
class FrameFifo {
 public:
  FrameFifo() = default;
  explicit FrameFifo(int depth) : depth_(depth) {}

  // Appends frame, evicting the oldest once depth frames are held.
  void push(Plane frame);
  bool full() const { return static_cast<int>(frames_.size()) == depth_; }
  int depth() const { return depth_; }
  std::span<const Plane> frames() const { return frames_; }
  const Plane& newest() const { return frames_.back(); }

 private:
  int depth_ = 0;
  std::vector<Plane> frames_;
};

// Single-pass streaming denoiser.
//
// Frames enter through push_frame. Nothing is produced until m frames have
// arrived; from then on every push denoises all patches of the current
// m-frame buffer, aggregates them into the output buffer and returns the
// oldest output frame, so input frame k comes out of push k + m - 1.
class StreamingDenoiser {
 public:
  // pass_sigma is the noise level used for thresholds (alpha0 * pass_sigma).
  StreamingDenoiser(const DenoiseConfig& config, int frame_h, int frame_w,
                    double pass_sigma);

  std::optional<Plane> push_frame(const Plane& frame);

  // push_frame for an engine configured in block-matching mode. Throws
  // ConfigError otherwise.
  std::optional<Plane> push_frame_bm(const Plane& frame);

  // Drains the output buffer by pushing m-1 copies of the last input frame
  // and returns the last m-1 denoised frames. A second call returns an
  // empty list. Throws Error before m frames have been pushed.
  std::vector<Plane> flush();

  const DenoiseConfig& config() const { return config_; }
  const PatchGeometry& geometry() const { return geometry_; }
  double pass_sigma() const { return pass_sigma_; }
  const LearnerState& learner() const { return learner_; }
  // Replaces the main learner (e.g. to warm-start a later pass).
  void set_learner(LearnerState learner);
  std::uint64_t frames_pushed() const { return frames_pushed_; }
  std::uint64_t frames_emitted() const { return frames_emitted_; }
  bool flushed() const { return flushed_; }

  // Binary checkpoint of the complete engine state; see checkpoint.hpp.
  void save(std::ostream& out) const;
  static StreamingDenoiser load(std::istream& in);

 private:
  StreamingDenoiser() = default;
  Plane process_buffer();
  void sweep_colocated(LearnerState& learner, MinibatchScheduler& scheduler,
                       std::span<const Plane> source, OutputAccumulator& acc,
                       const std::vector<PatchPos>& order, bool weighted);
  void sweep_block_matched(std::span<const Plane> match_source,
                           std::span<const Plane> value_source,
                           const std::vector<PatchPos>& order);
  std::vector<Plane> preclean(const std::vector<PatchPos>& order);
  std::optional<Plane> push_impl(const Plane& frame);

  friend struct CheckpointAccess;

  DenoiseConfig config_;
  PatchGeometry geometry_;
  double pass_sigma_ = 0.0;
  FrameFifo input_;
  OutputAccumulator output_;
  LearnerState learner_;
  MinibatchScheduler scheduler_;
  LearnerState preclean_learner_;
  MinibatchScheduler preclean_scheduler_;
  std::uint64_t frames_pushed_ = 0;
  std::uint64_t frames_emitted_ = 0;
  std::uint64_t buffers_processed_ = 0;
  // Outputs still to be dropped for the replicated lead-in frames.
  int lead_in_pending_ = 0;
  bool flushed_ = false;
};

// sqrt(max(0, sigma^2 - mean((noisy - denoised)^2))) over all pixels.
double estimate_remaining_noise(const std::vector<Plane>& noisy,
                                const std::vector<Plane>& denoised,
                                double sigma);

struct PassReport {
  int pass = 0;
  double sigma = 0.0;
  double rho = 0.0;
};

struct MultipassResult {
  std::vector<Plane> frames;
  std::vector<PassReport> passes;
};

// Called after each pass with its report and output.
using PassCallback =
    std::function<void(const PassReport&, const std::vector<Plane>&)>;

// Streams the whole video through a fresh StreamingDenoiser per pass. Pass
// 1 uses config.sigma; pass l > 1 denoises the output of pass l-1 with
// sigma re-estimated from the original noisy video. Each pass adds m-1
// frames of latency to the composite.
MultipassResult run_multipass(const std::vector<Plane>& noisy,
                              const DenoiseConfig& config,
                              const PassCallback& on_pass = {});

// One streaming pass over the full video.
std::vector<Plane> run_single_pass(const std::vector<Plane>& input,
                                   const DenoiseConfig& config, double sigma,
                                   LearnerState* carried_learner = nullptr);

}  // namespace tlvd
