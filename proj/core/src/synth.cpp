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

#include "tlvd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double texture(double x, double y) {
  double v = 118.0 + 0.35 * y;
  v += 38.0 * std::sin(kTwoPi * (x / 32.0 + y / 57.0));
  v += 22.0 * std::cos(kTwoPi * (y / 21.0 - x / 77.0));

  // Lattice of disks, alternating bright and dark.
  constexpr double kCell = 40.0;
  const double cx = std::floor(x / kCell);
  const double cy = std::floor(y / kCell);
  const double lx = x - (cx + 0.5) * kCell;
  const double ly = y - (cy + 0.5) * kCell;
  if (lx * lx + ly * ly <= 9.0 * 9.0) {
    const bool bright = static_cast<long long>(cx + cy) % 2 == 0;
    v += bright ? 45.0 : -45.0;
  }

  v += 9.0 * std::sin(kTwoPi * x / 5.3) * std::sin(kTwoPi * y / 6.1);
  return v;
}

}  // namespace

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "static") return SynthKind::kStatic;
  if (name == "translate") return SynthKind::kTranslate;
  if (name == "rotate") return SynthKind::kRotate;
  throw ConfigError("unknown synthetic clip kind '" + std::string(name) +
                    "' (expected static, translate, rotate)");
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kStatic:
      return "static";
    case SynthKind::kTranslate:
      return "translate";
    case SynthKind::kRotate:
      return "rotate";
  }
  return "?";
}

std::vector<Plane> synth_clip(SynthKind kind, int height, int width,
                              int frames) {
  if (height <= 0 || width <= 0 || frames <= 0) {
    throw ConfigError("synthetic clip dimensions must be positive");
  }
  const double cx = 0.5 * (width - 1);
  const double cy = 0.5 * (height - 1);
  std::vector<Plane> clip;
  clip.reserve(static_cast<std::size_t>(frames));
  for (int t = 0; t < frames; ++t) {
    Plane frame(height, width);
    const double angle = 1.5 * t * std::numbers::pi / 180.0;
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        double x = c;
        double y = r;
        switch (kind) {
          case SynthKind::kStatic:
            break;
          case SynthKind::kTranslate:
            x = c - t;
            break;
          case SynthKind::kRotate:
            x = cx + (c - cx) * ca + (r - cy) * sa;
            y = cy - (c - cx) * sa + (r - cy) * ca;
            break;
        }
        frame(r, c) = std::round(std::clamp(texture(x, y), 0.0, 255.0));
      }
    }
    clip.push_back(std::move(frame));
  }
  return clip;
}

}  // namespace tlvd
