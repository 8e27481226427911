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

#include "tlvd/video_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

namespace fs = std::filesystem;

std::vector<unsigned char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Plane plane_from_bytes(const unsigned char* p, int h, int w) {
  Plane out(h, w);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = p[i];
  return out;
}

void append_plane(std::string& bytes, const Plane& p) {
  for (double v : p.pixels()) bytes.push_back(static_cast<char>(to_8bit(v)));
}

void require_uniform(const Video& v) {
  if (v.frames.empty()) throw ShapeError("video has no frames");
  for (const Plane& f : v.frames) {
    if (f.height() != v.frames[0].height() || f.width() != v.frames[0].width()) {
      throw ShapeError("video frames have differing dimensions");
    }
  }
}

// --- YUV4MPEG2 -------------------------------------------------------------

struct Y4mHeader {
  int width = 0;
  int height = 0;
  int rate_num = 25;
  int rate_den = 1;
  std::size_t chroma_bytes = 0;
};

int parse_int(std::string_view s, std::size_t offset) {
  if (s.empty()) throw ParseError("y4m: empty numeric field", offset);
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("y4m: bad numeric field '" + std::string(s) + "'",
                       offset);
    }
    v = v * 10 + (c - '0');
    if (v > 1 << 20) throw ParseError("y4m: numeric field too large", offset);
  }
  return v;
}

Y4mHeader parse_y4m_header(std::string_view line, std::size_t base) {
  constexpr std::string_view kMagic = "YUV4MPEG2";
  if (line.substr(0, kMagic.size()) != kMagic) {
    throw ParseError("y4m: missing YUV4MPEG2 signature", base);
  }
  Y4mHeader h;
  std::string colorspace = "420jpeg";
  std::size_t pos = kMagic.size();
  while (pos < line.size()) {
    if (line[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view tok = line.substr(pos, end - pos);
    const std::string_view val = tok.substr(1);
    const std::size_t at = base + pos;
    switch (tok[0]) {
      case 'W':
        h.width = parse_int(val, at);
        break;
      case 'H':
        h.height = parse_int(val, at);
        break;
      case 'F': {
        const std::size_t colon = val.find(':');
        if (colon == std::string_view::npos) {
          throw ParseError("y4m: malformed frame rate", at);
        }
        h.rate_num = parse_int(val.substr(0, colon), at);
        h.rate_den = parse_int(val.substr(colon + 1), at);
        break;
      }
      case 'C':
        colorspace = std::string(val);
        break;
      default:  // I, A, X and unknown tags are ignored
        break;
    }
    pos = end;
  }
  if (h.width <= 0 || h.height <= 0) {
    throw ParseError("y4m: header lacks positive W and H", base);
  }
  const std::size_t cw = (static_cast<std::size_t>(h.width) + 1) / 2;
  const std::size_t ch = (static_cast<std::size_t>(h.height) + 1) / 2;
  if (colorspace == "mono") {
    h.chroma_bytes = 0;
  } else if (colorspace == "420" || colorspace == "420jpeg" ||
             colorspace == "420paldv" || colorspace == "420mpeg2") {
    h.chroma_bytes = 2 * cw * ch;
  } else {
    throw ParseError("y4m: unsupported colorspace '" + colorspace +
                         "' (only mono and 4:2:0 are accepted)",
                     base);
  }
  return h;
}

Video read_y4m(const fs::path& path) {
  const auto data = slurp(path);
  const auto nl = std::find(data.begin(), data.end(), '\n');
  if (nl == data.end()) throw ParseError("y4m: unterminated header", data.size());
  const std::string header(data.begin(), nl);
  const Y4mHeader h = parse_y4m_header(header, 0);

  Video video;
  video.width = h.width;
  video.height = h.height;
  video.rate_num = h.rate_num;
  video.rate_den = h.rate_den;
  video.source = VideoFormat::kY4m;

  const std::size_t luma = static_cast<std::size_t>(h.width) * h.height;
  std::size_t pos = header.size() + 1;
  while (pos < data.size()) {
    constexpr std::string_view kFrame = "FRAME";
    if (data.size() - pos < kFrame.size() ||
        !std::equal(kFrame.begin(), kFrame.end(), data.begin() + std::ptrdiff_t(pos))) {
      throw ParseError("y4m: expected FRAME marker", pos);
    }
    const auto end = std::find(data.begin() + std::ptrdiff_t(pos), data.end(), '\n');
    if (end == data.end()) throw ParseError("y4m: unterminated FRAME line", pos);
    pos = static_cast<std::size_t>(end - data.begin()) + 1;
    if (data.size() - pos < luma + h.chroma_bytes) {
      throw ParseError("y4m: truncated frame data", pos);
    }
    video.frames.push_back(plane_from_bytes(data.data() + pos, h.height, h.width));
    pos += luma + h.chroma_bytes;
  }
  return video;
}

void write_y4m(const Video& v, const fs::path& path) {
  std::ostringstream header;
  header << "YUV4MPEG2 W" << v.frames[0].width() << " H" << v.frames[0].height()
         << " F" << v.rate_num << ":" << v.rate_den << " Ip A1:1 Cmono\n";
  std::string bytes = header.str();
  for (const Plane& f : v.frames) {
    bytes += "FRAME\n";
    append_plane(bytes, f);
  }
  spit(path, bytes);
}

// --- PGM -----------------------------------------------------------------

Plane read_pgm(const fs::path& path) {
  const auto data = slurp(path);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(data[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&] {
    skip_space();
    const std::size_t start = pos;
    int v = 0;
    while (pos < data.size() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos] - '0');
      if (v > 1 << 20) throw ParseError("pgm: header value too large", start);
      ++pos;
    }
    if (pos == start) throw ParseError("pgm: expected a number", start);
    return v;
  };
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw ParseError("pgm: only binary P5 files are supported", 0);
  }
  pos = 2;
  const int w = number();
  const int h = number();
  const std::size_t maxval_at = pos;
  const int maxval = number();
  if (maxval != 255) {
    throw ParseError("pgm: maxval must be 255, got " + std::to_string(maxval),
                     maxval_at);
  }
  if (pos >= data.size() || !std::isspace(data[pos])) {
    throw ParseError("pgm: missing separator after header", pos);
  }
  ++pos;
  if (w <= 0 || h <= 0) throw ParseError("pgm: non-positive dimensions", 0);
  if (data.size() - pos < static_cast<std::size_t>(w) * h) {
    throw ParseError("pgm: truncated pixel data", pos);
  }
  return plane_from_bytes(data.data() + pos, h, w);
}

void write_pgm(const Plane& p, const fs::path& path) {
  std::string bytes = "P5\n" + std::to_string(p.width()) + " " +
                      std::to_string(p.height()) + "\n255\n";
  append_plane(bytes, p);
  spit(path, bytes);
}

fs::path sequence_path(const fs::path& pattern, int index) {
  const std::string pat = pattern.string();
  const int len = std::snprintf(nullptr, 0, pat.c_str(), index);
  if (len < 0) throw IoError("invalid PGM sequence pattern '" + pat + "'");
  std::string out(static_cast<std::size_t>(len) + 1, '\0');
  std::snprintf(out.data(), out.size(), pat.c_str(), index);
  out.resize(static_cast<std::size_t>(len));
  return out;
}

void check_pattern(const fs::path& pattern) {
  const std::string pat = pattern.string();
  int conversions = 0;
  for (std::size_t i = 0; i < pat.size(); ++i) {
    if (pat[i] != '%') continue;
    if (i + 1 < pat.size() && pat[i + 1] == '%') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < pat.size() && (std::isdigit(static_cast<unsigned char>(pat[j])) ||
                              pat[j] == '0')) {
      ++j;
    }
    if (j >= pat.size() || (pat[j] != 'd' && pat[j] != 'i')) {
      throw IoError("PGM sequence pattern '" + pat +
                    "' must use a single %d-style conversion");
    }
    ++conversions;
    i = j;
  }
  if (conversions != 1) {
    throw IoError("PGM sequence pattern '" + pat +
                  "' must contain exactly one integer conversion");
  }
}

Video read_pgm_sequence(const fs::path& pattern) {
  check_pattern(pattern);
  int index = fs::exists(sequence_path(pattern, 0)) ? 0 : 1;
  Video video;
  video.source = VideoFormat::kPgmSequence;
  for (;; ++index) {
    const fs::path p = sequence_path(pattern, index);
    if (!fs::exists(p)) break;
    video.frames.push_back(read_pgm(p));
  }
  if (video.frames.empty()) {
    throw IoError("no PGM files match '" + pattern.string() + "'");
  }
  video.width = video.frames[0].width();
  video.height = video.frames[0].height();
  require_uniform(video);
  return video;
}

// --- raw -----------------------------------------------------------------

Video read_raw(const fs::path& path, std::optional<RawDims> dims) {
  if (!dims || dims->width <= 0 || dims->height <= 0) {
    throw IoError("raw gray input requires positive width and height");
  }
  const auto data = slurp(path);
  const std::size_t frame = static_cast<std::size_t>(dims->width) * dims->height;
  if (data.size() % frame != 0) {
    throw ParseError("raw: file size is not a multiple of width*height",
                     data.size() - data.size() % frame);
  }
  Video video;
  video.source = VideoFormat::kRawGray;
  video.width = dims->width;
  video.height = dims->height;
  for (std::size_t pos = 0; pos < data.size(); pos += frame) {
    video.frames.push_back(plane_from_bytes(data.data() + pos, dims->height,
                                            dims->width));
  }
  return video;
}

}  // namespace

Video Video::from_frames(std::vector<Plane> frames) {
  Video v;
  v.frames = std::move(frames);
  if (!v.frames.empty()) {
    v.width = v.frames[0].width();
    v.height = v.frames[0].height();
  }
  return v;
}

std::uint8_t to_8bit(double value) {
  if (std::isnan(value)) return 0;
  const double r = std::round(std::clamp(value, 0.0, 255.0));
  return static_cast<std::uint8_t>(r);
}

std::string_view to_string(VideoFormat format) {
  switch (format) {
    case VideoFormat::kY4m:
      return "y4m";
    case VideoFormat::kPgmSequence:
      return "pgm-sequence";
    case VideoFormat::kRawGray:
      return "raw-gray";
  }
  return "?";
}

VideoFormat parse_video_format(std::string_view name) {
  if (name == "y4m") return VideoFormat::kY4m;
  if (name == "pgm" || name == "pgm-sequence") return VideoFormat::kPgmSequence;
  if (name == "raw" || name == "raw-gray") return VideoFormat::kRawGray;
  throw ConfigError("unknown video format '" + std::string(name) +
                    "' (expected y4m, pgm-sequence, raw-gray)");
}

VideoFormat guess_video_format(const fs::path& path) {
  const std::string s = path.string();
  if (path.extension() == ".y4m") return VideoFormat::kY4m;
  if (s.find('%') != std::string::npos) return VideoFormat::kPgmSequence;
  return VideoFormat::kRawGray;
}

Video read_video(const fs::path& path, VideoFormat format,
                 std::optional<RawDims> raw_dims) {
  switch (format) {
    case VideoFormat::kY4m:
      return read_y4m(path);
    case VideoFormat::kPgmSequence:
      return read_pgm_sequence(path);
    case VideoFormat::kRawGray:
      return read_raw(path, raw_dims);
  }
  throw ConfigError("unknown video format");
}

void write_video(const Video& video, const fs::path& path, VideoFormat format) {
  require_uniform(video);
  switch (format) {
    case VideoFormat::kY4m:
      write_y4m(video, path);
      return;
    case VideoFormat::kPgmSequence:
      check_pattern(path);
      for (std::size_t i = 0; i < video.frames.size(); ++i) {
        write_pgm(video.frames[i], sequence_path(path, static_cast<int>(i)));
      }
      return;
    case VideoFormat::kRawGray: {
      std::string bytes;
      for (const Plane& f : video.frames) append_plane(bytes, f);
      spit(path, bytes);
      return;
    }
  }
}

}  // namespace tlvd
