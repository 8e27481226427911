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

#include <string_view>
#include <vector>

#include "tlvd/frame.hpp"

namespace tlvd {

enum class SynthKind {
  kStatic,     // the same frame repeated
  kTranslate,  // content moves right by one pixel per frame
  kRotate,     // content rotates about the frame center, 1.5 degrees/frame
};

SynthKind parse_synth_kind(std::string_view name);
std::string_view to_string(SynthKind kind);

// Deterministic test clip sampled from an analytic texture (gratings,
// a lattice of sharp-edged disks and fine detail), rounded to integers in
// [0, 255].
std::vector<Plane> synth_clip(SynthKind kind, int height, int width,
                              int frames);

}  // namespace tlvd
