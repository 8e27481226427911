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
#include <vector>

#include "tlvd/frame.hpp"

namespace tlvd {

// Adds i.i.d. zero-mean Gaussian noise with standard deviation sigma. The
// result is not clamped.
//
// Generator: std::mt19937_64 seeded with `seed`. Each pair of 64-bit draws
// (a, b) becomes u1 = ((a >> 11) + 1) * 2^-53 in (0, 1] and
// u2 = (b >> 11) * 2^-53 in [0, 1); Box-Muller yields
// r*cos(2*pi*u2) and r*sin(2*pi*u2) with r = sqrt(-2 ln u1), applied to
// pixels in frame order, row-major within a frame. Both the engine and the
// transform are specified by the C++ standard, so a seed produces the same
// noise with any conforming toolchain.
std::vector<Plane> add_gaussian_noise(const std::vector<Plane>& frames,
                                      double sigma, std::uint64_t seed);

}  // namespace tlvd
