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

#include "tlvd/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "tlvd/errors.hpp"

namespace tlvd {

std::vector<Plane> add_gaussian_noise(const std::vector<Plane>& frames,
                                      double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise sigma must be a finite non-negative number");
  }
  std::vector<Plane> out = frames;
  if (sigma == 0.0) return out;

  std::mt19937_64 engine(seed);
  constexpr double kScale = 0x1.0p-53;
  bool have_spare = false;
  double spare = 0.0;
  auto next = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = static_cast<double>((engine() >> 11) + 1) * kScale;
    const double u2 = static_cast<double>(engine() >> 11) * kScale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare = r * std::sin(angle);
    have_spare = true;
    return r * std::cos(angle);
  };

  for (Plane& frame : out) {
    for (double& px : frame.pixels()) px += sigma * next();
  }
  return out;
}

}  // namespace tlvd
