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


#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "tlvd/config.hpp"
#include "tlvd/errors.hpp"
#include "tlvd/metrics.hpp"
#include "tlvd/noise.hpp"
#include "tlvd/parallel.hpp"
#include "tlvd/pipeline.hpp"
#include "tlvd/synth.hpp"
#include "tlvd/video_io.hpp"

namespace tlvd::cli {
namespace {

// Raised for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : ConfigError {
  using ConfigError::ConfigError;
};

struct VideoSource {
  std::string path;
  std::string format;

  VideoFormat resolved() const {
    return format.empty() ? guess_video_format(path) : parse_video_format(format);
  }
};

struct RawFlags {
  int width = 0;
  int height = 0;

  std::optional<RawDims> dims() const {
    if (width <= 0 && height <= 0) return std::nullopt;
    return RawDims{width, height};
  }
};

void require_raw_dims(const VideoSource& src, const RawFlags& raw) {
  if (src.resolved() == VideoFormat::kRawGray &&
      (raw.width <= 0 || raw.height <= 0)) {
    throw UsageError("raw gray input '" + src.path +
                     "' requires --width and --height");
  }
}

Video load(const VideoSource& src, const RawFlags& raw) {
  return read_video(src.path, src.resolved(), raw.dims());
}

void save(const Video& video, const VideoSource& dst) {
  write_video(video, dst.path, dst.resolved());
}

void write_csv(const VideoPsnr& result, const std::string& path,
               std::ostream& out) {
  if (path.empty()) {
    write_psnr_csv(out, result);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write_psnr_csv(file, result);
  if (!file) throw IoError("write to '" + path + "' failed");
}

// --- denoise ---------------------------------------------------------------

struct DenoiseFlags {
  VideoSource input;
  VideoSource output;
  VideoSource ref;
  RawFlags raw;
  std::string metrics_csv;
  std::string mode = "a1";
  std::string bm_source = "noisy";
  std::string weighting = "auto";
  std::string leftover = "carry";
  double rho = 0.0;
  int passes = 0;
  int workers = 0;
  bool preclean = true;
  bool quiet = false;
  DenoiseConfig config;
  CLI::Option* rho_opt = nullptr;
  CLI::Option* passes_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void add_denoise(CLI::App& app, DenoiseFlags& f) {
  DenoiseConfig& c = f.config;
  auto* sub = app.add_subcommand("denoise", "Denoise a video");
  sub->add_option("-i,--input", f.input.path, "Noisy input video")->required();
  sub->add_option("--format", f.input.format,
                  "Input format: y4m, pgm-sequence, raw-gray (default: from name)");
  sub->add_option("-o,--output", f.output.path, "Denoised output video")
      ->required();
  sub->add_option("--output-format", f.output.format,
                  "Output format (default: from name)");
  sub->add_option("--width", f.raw.width, "Frame width for raw input");
  sub->add_option("--height", f.raw.height, "Frame height for raw input");
  sub->add_option("--sigma", c.sigma, "Noise standard deviation (0-255 scale)")
      ->required();
  sub->add_option("--mode", f.mode, "a1, a2 or dct3d")
      ->capture_default_str()
      ->check(CLI::IsMember({"a1", "a2", "dct3d"}));
  sub->add_option("--ref", f.ref.path, "Clean reference for PSNR");
  sub->add_option("--ref-format", f.ref.format, "Reference format");
  sub->add_option("--metrics-csv", f.metrics_csv,
                  "Write frame-wise PSNR CSV here (requires --ref)");
  sub->add_option("--seed", c.seed, "Seed recorded with the run")
      ->capture_default_str();
  sub->add_option("--n1", c.n1, "Patch height")->capture_default_str();
  sub->add_option("--n2", c.n2, "Patch width")->capture_default_str();
  sub->add_option("--m", c.m, "Temporal patch depth")->capture_default_str();
  sub->add_option("--stride", c.stride, "Spatial patch stride")
      ->capture_default_str();
  sub->add_option("--alpha0", c.alpha0, "Threshold multiplier")
      ->capture_default_str();
  sub->add_option("--lambda0", c.lambda0, "Regularizer weight")
      ->capture_default_str();
  sub->add_option("--minibatch", c.minibatch_size,
                  "Mini-batch size (0: 15 * patch size)")
      ->capture_default_str();
  f.rho_opt = sub->add_option("--rho", f.rho,
                              "Forgetting factor (default: from sigma)");
  f.passes_opt = sub->add_option("--passes", f.passes,
                                 "Number of passes (default: from sigma)");
  sub->add_option("--h1", c.h1, "Search window height")->capture_default_str();
  sub->add_option("--h2", c.h2, "Search window width")->capture_default_str();
  sub->add_option("--preclean", f.preclean,
                  "Pre-clean each buffer before block matching")
      ->capture_default_str();
  sub->add_option("--bm-source", f.bm_source,
                  "Patch values for block matching: precleaned or noisy")
      ->capture_default_str();
  sub->add_option("--weighting", f.weighting, "auto, uniform or sparsity")
      ->capture_default_str();
  sub->add_option("--leftover", f.leftover,
                  "Leftover patch policy: carry or partial")
      ->capture_default_str();
  sub->add_flag("--carry-learner", c.carry_learner_across_passes,
                "Keep the learned transform between passes");
  sub->add_option("--alternations", c.alternations,
                  "Sparse-code/update alternations per mini-batch")
      ->capture_default_str();
  f.workers_opt = sub->add_option(
      "--workers", f.workers, "Worker threads (default: TLVD_WORKERS or 1)");
  sub->add_flag("-q,--quiet", f.quiet, "Suppress progress output");
}

nlohmann::ordered_json echo(const DenoiseConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(c.mode));
  j["sigma"] = c.sigma;
  j["n1"] = c.n1;
  j["n2"] = c.n2;
  j["m"] = c.m;
  j["stride"] = c.stride;
  j["alpha0"] = c.alpha0;
  j["lambda0"] = c.lambda0;
  j["minibatch_size"] = c.effective_minibatch_size();
  j["rho"] = c.effective_rho();
  j["passes"] = c.effective_passes();
  j["h1"] = c.h1;
  j["h2"] = c.h2;
  j["preclean"] = c.preclean;
  j["bm_source"] = std::string(to_string(c.bm_source));
  j["weighting"] = std::string(to_string(c.weighting));
  j["sparsity_weights"] = c.uses_sparsity_weights();
  j["leftover"] = std::string(to_string(c.leftover));
  j["carry_learner_across_passes"] = c.carry_learner_across_passes;
  j["alternations"] = c.alternations;
  j["workers"] = c.workers;
  j["seed"] = c.seed;
  return j;
}

int run_denoise(DenoiseFlags& f, std::ostream& out, std::ostream& err) {
  DenoiseConfig& c = f.config;
  c.mode = parse_mode(f.mode);
  c.bm_source = parse_bm_source(f.bm_source);
  c.weighting = parse_weighting(f.weighting);
  c.leftover = parse_leftover(f.leftover);
  c.preclean = f.preclean;
  if (f.rho_opt->count() > 0) c.rho = f.rho;
  if (f.passes_opt->count() > 0) c.passes = f.passes;
  c.workers = f.workers_opt->count() > 0 ? f.workers : worker_count();
  if (!f.metrics_csv.empty() && f.ref.path.empty()) {
    throw UsageError("--metrics-csv requires --ref");
  }
  require_raw_dims(f.input, f.raw);
  if (!f.ref.path.empty()) require_raw_dims(f.ref, f.raw);
  f.output.resolved();
  c.validate();
  set_worker_count(c.workers);

  const Video noisy = load(f.input, f.raw);
  if (noisy.frames.empty()) throw IoError("input video has no frames");
  c.validate(noisy.height, noisy.width);
  std::optional<Video> ref;
  if (!f.ref.path.empty()) {
    ref = load(f.ref, f.raw);
    if (ref->frame_count() != noisy.frame_count() ||
        ref->width != noisy.width || ref->height != noisy.height) {
      throw ShapeError("reference and input videos differ in shape");
    }
  }

  nlohmann::ordered_json j = echo(c);
  j["input"] = f.input.path;
  j["output"] = f.output.path;
  j["frames"] = noisy.frame_count();
  j["height"] = noisy.height;
  j["width"] = noisy.width;
  err << "config " << j.dump() << '\n';

  const auto start = std::chrono::steady_clock::now();
  const MultipassResult result = run_multipass(
      noisy.frames, c, [&](const PassReport& p, const std::vector<Plane>& fr) {
        if (f.quiet) return;
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        char line[160];
        std::snprintf(line, sizeof line,
                      "pass %d/%d sigma=%.4f rho=%.2f elapsed=%.1fs", p.pass,
                      c.effective_passes(), p.sigma, p.rho, secs);
        err << line;
        if (ref) err << " psnr=" << format_db(psnr(ref->frames, fr).video_db);
        err << '\n';
      });

  Video denoised = Video::from_frames(result.frames);
  denoised.rate_num = noisy.rate_num;
  denoised.rate_den = noisy.rate_den;
  save(denoised, f.output);

  if (ref) {
    // Scored as written: 8-bit, clamped and rounded.
    for (Plane& frame : denoised.frames) {
      for (double& px : frame.pixels()) px = to_8bit(px);
    }
    const VideoPsnr score = psnr(ref->frames, denoised.frames);
    write_csv(score, f.metrics_csv, out);
    if (!f.quiet) {
      err << "input psnr=" << format_db(psnr(ref->frames, noisy.frames).video_db)
          << " output psnr=" << format_db(score.video_db) << '\n';
    }
  }
  return kExitOk;
}

// --- add-noise ---------------------------------------------------------------

struct NoiseFlags {
  VideoSource input;
  VideoSource output;
  RawFlags raw;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

void add_noise_cmd(CLI::App& app, NoiseFlags& f) {
  auto* sub = app.add_subcommand("add-noise", "Add white Gaussian noise");
  sub->add_option("-i,--input", f.input.path, "Clean input video")->required();
  sub->add_option("--format", f.input.format, "Input format");
  sub->add_option("--width", f.raw.width, "Frame width for raw input");
  sub->add_option("--height", f.raw.height, "Frame height for raw input");
  sub->add_option("--sigma", f.sigma, "Noise standard deviation")->required();
  sub->add_option("--seed", f.seed, "Generator seed")->capture_default_str();
  sub->add_option("-o,--output", f.output.path, "Noisy output video")
      ->required();
  sub->add_option("--output-format", f.output.format, "Output format");
}

int run_add_noise(const NoiseFlags& f) {
  if (!(f.sigma >= 0.0)) throw UsageError("--sigma must be non-negative");
  require_raw_dims(f.input, f.raw);
  f.output.resolved();
  const Video clean = load(f.input, f.raw);
  Video noisy = Video::from_frames(add_gaussian_noise(clean.frames, f.sigma, f.seed));
  noisy.rate_num = clean.rate_num;
  noisy.rate_den = clean.rate_den;
  save(noisy, f.output);
  return kExitOk;
}

// --- psnr --------------------------------------------------------------------

struct PsnrFlags {
  VideoSource ref;
  VideoSource test;
  RawFlags raw;
  std::string csv;
};

void add_psnr(CLI::App& app, PsnrFlags& f) {
  auto* sub = app.add_subcommand("psnr", "Compare a video with a reference");
  sub->add_option("--ref", f.ref.path, "Reference video")->required();
  sub->add_option("--test", f.test.path, "Video under test")->required();
  sub->add_option("--ref-format", f.ref.format, "Reference format");
  sub->add_option("--test-format", f.test.format, "Test format");
  sub->add_option("--width", f.raw.width, "Frame width for raw input");
  sub->add_option("--height", f.raw.height, "Frame height for raw input");
  sub->add_option("--csv", f.csv,
                  "Write the CSV here and print only the video PSNR");
}

int run_psnr(const PsnrFlags& f, std::ostream& out) {
  require_raw_dims(f.ref, f.raw);
  require_raw_dims(f.test, f.raw);
  const Video ref = load(f.ref, f.raw);
  const Video test = load(f.test, f.raw);
  const VideoPsnr score = psnr(ref.frames, test.frames);
  write_csv(score, f.csv, out);
  if (!f.csv.empty()) out << format_db(score.video_db) << '\n';
  return kExitOk;
}

// --- synth -------------------------------------------------------------------

struct SynthFlags {
  std::string kind;
  std::string size = "64";
  int frames = 40;
  VideoSource output;
};

void add_synth(CLI::App& app, SynthFlags& f) {
  auto* sub = app.add_subcommand("synth", "Generate a synthetic test clip");
  sub->add_option("--kind", f.kind, "static, translate or rotate")
      ->required()
      ->check(CLI::IsMember({"static", "translate", "rotate"}));
  sub->add_option("--size", f.size, "Frame size as N or HxW")
      ->capture_default_str();
  sub->add_option("--frames", f.frames, "Frame count")->capture_default_str();
  sub->add_option("-o,--output", f.output.path, "Output video")->required();
  sub->add_option("--output-format", f.output.format, "Output format");
}

std::pair<int, int> parse_size(const std::string& s) {
  int h = 0, w = 0;
  char x = 0;
  std::istringstream in(s);
  if (in >> h) {
    if (in >> x) {
      if ((x != 'x' && x != 'X') || !(in >> w)) h = 0;
    } else {
      w = h;
    }
  }
  std::string rest;
  if (in >> rest || h <= 0 || w <= 0) {
    throw UsageError("--size must be N or HxW with positive integers, got '" +
                     s + "'");
  }
  return {h, w};
}

int run_synth(const SynthFlags& f) {
  const auto [h, w] = parse_size(f.size);
  if (f.frames <= 0) throw UsageError("--frames must be positive");
  f.output.resolved();
  save(Video::from_frames(synth_clip(parse_synth_kind(f.kind), h, w, f.frames)),
       f.output);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Streaming video denoiser with an online-learned 3D transform",
               "tlvd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tlvd 0.1.0");
  DenoiseFlags denoise;
  NoiseFlags noise;
  PsnrFlags psnr_flags;
  SynthFlags synth;
  add_denoise(app, denoise);
  add_noise_cmd(app, noise);
  add_psnr(app, psnr_flags);
  add_synth(app, synth);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("denoise")) return run_denoise(denoise, out, err);
    if (app.got_subcommand("add-noise")) return run_add_noise(noise);
    if (app.got_subcommand("psnr")) return run_psnr(psnr_flags, out);
    if (app.got_subcommand("synth")) return run_synth(synth);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tlvd::cli
