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

#include "tlvd/transform.hpp"

namespace tlvd {

// Binary checkpoint containers. All values are little-endian; matrices are
// written as rows*cols doubles in column-major order.
//
// Learner container:
//   char[8]  "tlvd-lrn"
//   u32      version (1)
//   u64      n
//   f64      rho, lambda0, beta
//   u64      minibatch_count, skipped_updates
//   i32      alternations
//   u8       frozen
//   f64[n*n] w, gamma, theta
//
// Engine container (StreamingDenoiser::save):
//   char[8]  "tlvd-eng"
//   u32      version (1)
//   config   n1 n2 m stride (i32), alpha0 lambda0 (f64), minibatch_size
//            (i32), has_rho (u8) rho (f64), has_passes (u8) passes (i32),
//            sigma (f64), h1 h2 (i32), mode leftover bm_source weighting
//            (u8), seed (u64), preclean carry_learner (u8), alternations
//            workers (i32)
//   i32      frame_h, frame_w
//   f64      pass_sigma
//   u64      frames_pushed, frames_emitted, buffers_processed
//   u8       flushed
//   u32      number of buffered input frames, then each frame's pixels
//   f64[...] output value planes (m), then output weight planes (m)
//   learner container, scheduler carry (u64 cols, matrix, alphas,
//   u64 full_batches)
//   u8       has_preclean, followed by a learner container and scheduler
//            carry when set
void save_learner(const LearnerState& state, std::ostream& out);

// Throws ParseError on malformed input. The cached inverse is recomputed.
LearnerState load_learner(std::istream& in);

}  // namespace tlvd
