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

#include <iosfwd>
#include <string>
#include <vector>

#include "tlvd/frame.hpp"

namespace tlvd {

inline constexpr double kPeakValue = 255.0;

struct VideoPsnr {
  // 20*log10(255 / rmse) with rmse over every pixel of the video.
  double video_db = 0.0;
  // The same quantity per frame.
  std::vector<double> frame_db;
};

// +inf when the inputs are identical. Throws ShapeError on mismatched
// shapes.
double psnr(const Plane& reference, const Plane& test);
VideoPsnr psnr(const std::vector<Plane>& reference,
               const std::vector<Plane>& test);

// "inf" for +inf, otherwise fixed with 4 decimals.
std::string format_db(double db);

// CSV with header "frame,psnr_db", one row per frame (0-based index) and a
// final "all,<video psnr>" row.
void write_psnr_csv(std::ostream& out, const VideoPsnr& result);

}  // namespace tlvd
