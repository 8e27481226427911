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

#include "tlvd/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

double sum_squared_error(const Plane& a, const Plane& b) {
  if (!a.same_shape(b)) throw ShapeError("psnr: frame dimensions differ");
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = pa[i] - pb[i];
    sum += d * d;
  }
  return sum;
}

double db_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(kPeakValue / std::sqrt(mse));
}

}  // namespace

double psnr(const Plane& reference, const Plane& test) {
  const double sse = sum_squared_error(reference, test);
  return db_from_mse(sse / static_cast<double>(reference.size()));
}

VideoPsnr psnr(const std::vector<Plane>& reference,
               const std::vector<Plane>& test) {
  if (reference.size() != test.size()) {
    throw ShapeError("psnr: videos have different frame counts");
  }
  if (reference.empty()) throw ShapeError("psnr: videos are empty");
  VideoPsnr out;
  double total = 0.0;
  std::size_t pixels = 0;
  for (std::size_t f = 0; f < reference.size(); ++f) {
    const double sse = sum_squared_error(reference[f], test[f]);
    total += sse;
    pixels += reference[f].size();
    out.frame_db.push_back(db_from_mse(sse / static_cast<double>(reference[f].size())));
  }
  out.video_db = db_from_mse(total / static_cast<double>(pixels));
  return out;
}

std::string format_db(double db) {
  if (std::isinf(db) && db > 0) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", db);
  return buf;
}

void write_psnr_csv(std::ostream& out, const VideoPsnr& result) {
  out << "frame,psnr_db\n";
  for (std::size_t i = 0; i < result.frame_db.size(); ++i) {
    out << i << ',' << format_db(result.frame_db[i]) << '\n';
  }
  out << "all," << format_db(result.video_db) << '\n';
}

}  // namespace tlvd
