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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlvd/frame.hpp"

namespace tlvd {

enum class VideoFormat {
  kY4m,          // YUV4MPEG2, mono or 4:2:0; only the Y plane is used
  kPgmSequence,  // numbered binary PGM (P5, maxval 255) files
  kRawGray,      // headerless 8-bit luminance, dimensions supplied
};

// Grayscale video on the 0-255 scale. Pixel values may leave [0, 255]
// (e.g. after adding noise); they are clamped only when written.
struct Video {
  std::vector<Plane> frames;
  int width = 0;
  int height = 0;
  VideoFormat source = VideoFormat::kY4m;
  int rate_num = 25;
  int rate_den = 1;

  std::size_t frame_count() const { return frames.size(); }
  static Video from_frames(std::vector<Plane> frames);
};

struct RawDims {
  int width = 0;
  int height = 0;
};

std::string_view to_string(VideoFormat format);
// Parses "y4m", "pgm" / "pgm-sequence", "raw" / "raw-gray".
VideoFormat parse_video_format(std::string_view name);
// By extension: ".y4m" -> y4m, a pattern containing '%' -> pgm sequence,
// anything else -> raw.
VideoFormat guess_video_format(const std::filesystem::path& path);

// PGM sequences are addressed by a printf-style pattern with one integer
// conversion, e.g. "clip/frame_%03d.pgm". Reading starts at index 0 (or 1
// if index 0 does not exist) and stops at the first missing index; writing
// numbers frames from 0.
//
// Throws IoError when files cannot be opened and ParseError (with byte
// offset) on malformed content or unsupported colorspaces.
Video read_video(const std::filesystem::path& path, VideoFormat format,
                 std::optional<RawDims> raw_dims = std::nullopt);

// 8-bit output: values are clamped to [0, 255] and rounded half away from
// zero (127.5 -> 128).
void write_video(const Video& video, const std::filesystem::path& path,
                 VideoFormat format);

std::uint8_t to_8bit(double value);

}  // namespace tlvd
