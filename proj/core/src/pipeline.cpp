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

#include "tlvd/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "tlvd/dct.hpp"
#include "tlvd/errors.hpp"
#include "tlvd/parallel.hpp"

namespace tlvd {
namespace {

LearnerState initial_learner(const DenoiseConfig& config) {
  LearnerState s = make_learner(dct3d_matrix(config.n1, config.n2, config.m),
                                config.effective_rho(), config.lambda0);
  s.alternations = config.alternations;
  s.frozen = config.mode == Mode::kFixedDct;
  return s;
}

void require_frame(const Plane& frame, const PatchGeometry& g) {
  if (frame.height() != g.frame_h || frame.width() != g.frame_w) {
    std::ostringstream msg;
    msg << "frame is " << frame.height() << "x" << frame.width()
        << ", expected " << g.frame_h << "x" << g.frame_w;
    throw ShapeError(msg.str());
  }
}

void require_same_video_shape(const std::vector<Plane>& a,
                              const std::vector<Plane>& b) {
  if (a.size() != b.size()) {
    throw ShapeError("videos have different frame counts");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].same_shape(b[i])) {
      throw ShapeError("videos have different frame dimensions");
    }
  }
}

}  // namespace

void FrameFifo::push(Plane frame) {
  if (full()) frames_.erase(frames_.begin());
  frames_.push_back(std::move(frame));
}

StreamingDenoiser::StreamingDenoiser(const DenoiseConfig& config, int frame_h,
                                     int frame_w, double pass_sigma)
    : config_(config), pass_sigma_(pass_sigma) {
  config_.validate(frame_h, frame_w);
  if (!(pass_sigma >= 0.0) || !std::isfinite(pass_sigma)) {
    throw ConfigError("pass sigma must be a finite non-negative number");
  }
  geometry_ = config_.geometry(frame_h, frame_w);
  input_ = FrameFifo(config_.m);
  output_ = OutputAccumulator(frame_h, frame_w, config_.m);
  learner_ = initial_learner(config_);
  scheduler_ = MinibatchScheduler(config_.patch_size(),
                                  config_.effective_minibatch_size(),
                                  config_.leftover);
  if (config_.mode == Mode::kBlockMatched && config_.preclean) {
    preclean_learner_ = initial_learner(config_);
    preclean_scheduler_ = scheduler_;
  }
}

void StreamingDenoiser::set_learner(LearnerState learner) {
  if (learner.dim() != geometry_.patch_size()) {
    throw ShapeError("set_learner: transform size does not match patch size");
  }
  learner_ = std::move(learner);
}

std::optional<Plane> StreamingDenoiser::push_frame(const Plane& frame) {
  if (flushed_) throw Error("push_frame: stream has already been flushed");
  require_frame(frame, geometry_);
  if (frames_pushed_ == 0 && config_.mode == Mode::kBlockMatched) {
    // The first (m-1)/2 frames would never sit in the reference slot, so
    // replicate the first frame in front of them, as flush does at the end.
    const int lead = (config_.m - 1) / 2;
    for (int k = 0; k < lead; ++k) input_.push(frame);
    lead_in_pending_ = lead;
  }
  ++frames_pushed_;
  return push_impl(frame);
}

std::optional<Plane> StreamingDenoiser::push_frame_bm(const Plane& frame) {
  if (config_.mode != Mode::kBlockMatched) {
    throw ConfigError("push_frame_bm: engine is not in block-matching mode");
  }
  return push_frame(frame);
}

std::optional<Plane> StreamingDenoiser::push_impl(const Plane& frame) {
  input_.push(frame);
  if (!input_.full()) return std::nullopt;
  Plane out = process_buffer();
  if (lead_in_pending_ > 0) {
    --lead_in_pending_;
    return std::nullopt;
  }
  ++frames_emitted_;
  return out;
}

std::vector<Plane> StreamingDenoiser::flush() {
  if (flushed_) return {};
  if (frames_pushed_ < static_cast<std::uint64_t>(config_.m)) {
    throw Error("flush: called before the first m frames were pushed");
  }
  const Plane last = input_.newest();
  std::vector<Plane> out;
  out.reserve(static_cast<std::size_t>(config_.m - 1));
  for (int k = 0; k < config_.m - 1; ++k) out.push_back(*push_impl(last));
  flushed_ = true;
  return out;
}

Plane StreamingDenoiser::process_buffer() {
  const ScanParity parity =
      buffers_processed_ % 2 == 0 ? ScanParity::kEven : ScanParity::kOdd;
  const std::vector<PatchPos> order = serpentine_order(geometry_, parity);

  if (config_.mode == Mode::kBlockMatched) {
    if (config_.preclean) {
      const std::vector<Plane> cleaned = preclean(order);
      const std::span<const Plane> values =
          config_.bm_source == BmSource::kPrecleaned
              ? std::span<const Plane>(cleaned)
              : input_.frames();
      sweep_block_matched(cleaned, values, order);
    } else {
      sweep_block_matched(input_.frames(), input_.frames(), order);
    }
  } else {
    sweep_colocated(learner_, scheduler_, input_.frames(), output_, order,
                    config_.uses_sparsity_weights());
  }

  Plane out = output_.normalize_oldest();
  output_.shift();
  ++buffers_processed_;
  return out;
}

void StreamingDenoiser::sweep_colocated(LearnerState& learner,
                                        MinibatchScheduler& scheduler,
                                        std::span<const Plane> source,
                                        OutputAccumulator& acc,
                                        const std::vector<PatchPos>& order,
                                        bool weighted) {
  const PatchGeometry& g = geometry_;
  scheduler.sweep(
      learner, order.size(), config_.alpha0 * pass_sigma_,
      [&](std::size_t i, Eigen::Ref<Vector> out) {
        extract_patch(source, g, order[i], out);
      },
      [&](std::size_t i, const Eigen::Ref<const Vector>& patch,
          const Eigen::Ref<const Vector>& code) {
        acc.deposit_patch(g, order[i], patch,
                          weighted ? patch_weight(code) : 1.0);
      });
}

std::vector<Plane> StreamingDenoiser::preclean(
    const std::vector<PatchPos>& order) {
  OutputAccumulator scratch(geometry_.frame_h, geometry_.frame_w, geometry_.m);
  sweep_colocated(preclean_learner_, preclean_scheduler_, input_.frames(),
                  scratch, order, false);
  std::vector<Plane> cleaned;
  cleaned.reserve(static_cast<std::size_t>(geometry_.m));
  for (int d = 0; d < geometry_.m; ++d) cleaned.push_back(scratch.normalize(d));
  return cleaned;
}

void StreamingDenoiser::sweep_block_matched(
    std::span<const Plane> match_source, std::span<const Plane> value_source,
    const std::vector<PatchPos>& order) {
  const PatchGeometry& g = geometry_;
  std::vector<BmRecord> records(order.size());
  parallel_for(order.size(), [&](std::size_t i) {
    records[i] = block_match(match_source, g, order[i], config_.h1, config_.h2);
  });

  const bool weighted = config_.uses_sparsity_weights();
  scheduler_.sweep(
      learner_, order.size(), config_.alpha0 * pass_sigma_,
      [&](std::size_t i, Eigen::Ref<Vector> out) {
        form_bm_patch(value_source, g, records[i], out);
      },
      [&](std::size_t i, const Eigen::Ref<const Vector>& patch,
          const Eigen::Ref<const Vector>& code) {
        deposit_bm(output_, g, records[i], patch,
                   weighted ? patch_weight(code) : 1.0);
      });
}

double estimate_remaining_noise(const std::vector<Plane>& noisy,
                                const std::vector<Plane>& denoised,
                                double sigma) {
  require_same_video_shape(noisy, denoised);
  if (!(sigma > 0.0)) {
    throw ConfigError("estimate_remaining_noise: sigma must be positive");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < noisy.size(); ++f) {
    const auto a = noisy[f].pixels();
    const auto b = denoised[f].pixels();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
    count += a.size();
  }
  if (count == 0) return sigma;
  const double removed = sum / static_cast<double>(count);
  return std::sqrt(std::max(0.0, sigma * sigma - removed));
}

std::vector<Plane> run_single_pass(const std::vector<Plane>& input,
                                   const DenoiseConfig& config, double sigma,
                                   LearnerState* carried_learner) {
  if (static_cast<int>(input.size()) < config.m) {
    std::ostringstream msg;
    msg << "video has " << input.size() << " frames; at least m=" << config.m
        << " are required";
    throw ConfigError(msg.str());
  }
  StreamingDenoiser engine(config, input.front().height(),
                           input.front().width(), sigma);
  if (carried_learner != nullptr && carried_learner->w.size() > 0) {
    engine.set_learner(*carried_learner);
  }
  std::vector<Plane> out;
  out.reserve(input.size());
  for (const Plane& frame : input) {
    if (auto denoised = engine.push_frame(frame)) {
      out.push_back(std::move(*denoised));
    }
  }
  for (Plane& frame : engine.flush()) out.push_back(std::move(frame));
  if (carried_learner != nullptr) *carried_learner = engine.learner();
  return out;
}

MultipassResult run_multipass(const std::vector<Plane>& noisy,
                              const DenoiseConfig& config,
                              const PassCallback& on_pass) {
  config.validate();
  MultipassResult result;
  std::vector<Plane> current = noisy;
  LearnerState carried;
  const int passes = config.effective_passes();
  for (int pass = 1; pass <= passes; ++pass) {
    const double sigma =
        pass == 1 ? config.sigma
                  : estimate_remaining_noise(noisy, current, config.sigma);
    current = run_single_pass(
        current, config, sigma,
        config.carry_learner_across_passes ? &carried : nullptr);
    PassReport report{pass, sigma, config.effective_rho()};
    result.passes.push_back(report);
    if (on_pass) on_pass(report, current);
  }
  result.frames = std::move(current);
  return result;
}

}  // namespace tlvd
