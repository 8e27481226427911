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

#include <span>
#include <vector>

#include "tlvd/frame.hpp"
#include "tlvd/linalg.hpp"
#include "tlvd/patches.hpp"

namespace tlvd {

// One matched n1 x n2 patch: its frame depth in the buffer, top-left
// position and Euclidean distance to the reference patch.
struct BmSlot {
  int depth = 0;
  int row = 0;
  int col = 0;
  double distance = 0.0;
  friend bool operator==(const BmSlot&, const BmSlot&) = default;
};

// Block-matching result for one reference patch of the middle frame.
//
// slots[0] is the reference itself (distance 0). slots[1..m-1] hold one
// match per other frame depth, sorted by ascending distance; ties go to the
// smaller displacement from the reference, then to the smaller depth.
struct BmRecord {
  PatchPos ref;
  std::vector<BmSlot> slots;
  friend bool operator==(const BmRecord&, const BmRecord&) = default;
};

// Largest |displacement| searched along one axis for window size h and
// patch side n: floor((h - n) / 2). A 21-pixel window with 8-pixel patches
// searches displacements -6..6.
inline int search_radius(int window, int patch) { return (window - patch) / 2; }

// Exhaustive search, in every frame other than the middle one, for the
// n1 x n2 patch closest to the reference patch at ref in the middle frame
// (depth (m-1)/2). Candidates are restricted to displacements within the
// h1 x h2 window and to positions where the patch fits in the frame.
// Within a frame, equal distances resolve to the smaller displacement, then
// to row-major scan order.
BmRecord block_match(std::span<const Plane> buffer, const PatchGeometry& g,
                     PatchPos ref, int h1, int h2);

// Stacks the matched 2D patches in slot order and vectorizes the result
// (slice s of the vector is slot s).
void form_bm_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                   const BmRecord& rec, Eigen::Ref<Vector> out);
Vector form_bm_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                     const BmRecord& rec);

// Adds slice s of patch, scaled by weight, at the location recorded in
// slot s; weights are accumulated the same way.
void deposit_bm(OutputAccumulator& acc, const PatchGeometry& g,
                const BmRecord& rec, const Eigen::Ref<const Vector>& patch,
                double weight);

// Aggregation weight 1 / (1 + number of nonzeros in the sparse code).
double patch_weight(const Eigen::Ref<const Vector>& code);

}  // namespace tlvd
