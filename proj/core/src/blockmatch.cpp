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

#include "tlvd/blockmatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

struct Candidate {
  double ssd = std::numeric_limits<double>::infinity();
  int row = 0;
  int col = 0;
  int disp2 = std::numeric_limits<int>::max();
};

// Sum of squared differences between the reference patch and the patch at
// (row, col) of frame, abandoning once it exceeds bound.
double patch_ssd(const Plane& ref_frame, PatchPos ref, const Plane& frame,
                 int row, int col, int n1, int n2, double bound) {
  double ssd = 0.0;
  for (int r = 0; r < n1; ++r) {
    const double* a = ref_frame.row_ptr(ref.row + r) + ref.col;
    const double* b = frame.row_ptr(row + r) + col;
    for (int c = 0; c < n2; ++c) {
      const double diff = a[c] - b[c];
      ssd += diff * diff;
    }
    if (ssd > bound) return ssd;
  }
  return ssd;
}

void check_slot(const PatchGeometry& g, const Plane& frame, const BmSlot& s) {
  if (s.depth < 0 || s.depth >= g.m || s.row < 0 || s.col < 0 ||
      s.row + g.n1 > frame.height() || s.col + g.n2 > frame.width()) {
    std::ostringstream msg;
    msg << "block-matching record has invalid slot (depth " << s.depth
        << ", row " << s.row << ", col " << s.col << ")";
    throw ShapeError(msg.str());
  }
}

void check_record(const PatchGeometry& g, const Plane& frame,
                  const BmRecord& rec) {
  if (static_cast<int>(rec.slots.size()) != g.m) {
    throw ShapeError("block-matching record must have exactly m slots");
  }
  for (const BmSlot& s : rec.slots) check_slot(g, frame, s);
}

}  // namespace

BmRecord block_match(std::span<const Plane> buffer, const PatchGeometry& g,
                     PatchPos ref, int h1, int h2) {
  if (static_cast<int>(buffer.size()) != g.m) {
    throw ShapeError("block_match: buffer depth does not match m");
  }
  if (g.m % 2 == 0) {
    throw ConfigError("block_match: temporal depth m must be odd");
  }
  const int mid = (g.m - 1) / 2;
  const Plane& ref_frame = buffer[static_cast<std::size_t>(mid)];
  if (ref.row < 0 || ref.col < 0 || ref.row + g.n1 > ref_frame.height() ||
      ref.col + g.n2 > ref_frame.width()) {
    throw ShapeError("block_match: reference patch out of bounds");
  }

  const int rad_r = search_radius(h1, g.n1);
  const int rad_c = search_radius(h2, g.n2);
  const int row_lo = std::max(0, ref.row - rad_r);
  const int row_hi = std::min(ref_frame.height() - g.n1, ref.row + rad_r);
  const int col_lo = std::max(0, ref.col - rad_c);
  const int col_hi = std::min(ref_frame.width() - g.n2, ref.col + rad_c);

  BmRecord rec;
  rec.ref = ref;
  rec.slots.reserve(static_cast<std::size_t>(g.m));
  rec.slots.push_back({mid, ref.row, ref.col, 0.0});

  std::vector<std::pair<int, BmSlot>> matches;  // (disp2, slot)
  for (int d = 0; d < g.m; ++d) {
    if (d == mid) continue;
    const Plane& frame = buffer[static_cast<std::size_t>(d)];
    Candidate best;
    for (int row = row_lo; row <= row_hi; ++row) {
      for (int col = col_lo; col <= col_hi; ++col) {
        const int dr = row - ref.row;
        const int dc = col - ref.col;
        const int disp2 = dr * dr + dc * dc;
        const double ssd =
            patch_ssd(ref_frame, ref, frame, row, col, g.n1, g.n2, best.ssd);
        // Row-major visiting order already prefers earlier positions.
        if (ssd < best.ssd || (ssd == best.ssd && disp2 < best.disp2)) {
          best = {ssd, row, col, disp2};
        }
      }
    }
    matches.push_back({best.disp2, {d, best.row, best.col, std::sqrt(best.ssd)}});
  }

  std::stable_sort(matches.begin(), matches.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second.distance != b.second.distance) {
                       return a.second.distance < b.second.distance;
                     }
                     if (a.first != b.first) return a.first < b.first;
                     return a.second.depth < b.second.depth;
                   });
  for (const auto& m : matches) rec.slots.push_back(m.second);
  return rec;
}

void form_bm_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                   const BmRecord& rec, Eigen::Ref<Vector> out) {
  if (static_cast<int>(buffer.size()) != g.m || out.size() != g.patch_size()) {
    throw ShapeError("form_bm_patch: buffer or output does not match geometry");
  }
  check_record(g, buffer[0], rec);
  double* dst = out.data();
  for (const BmSlot& s : rec.slots) {
    const Plane& frame = buffer[static_cast<std::size_t>(s.depth)];
    for (int r = 0; r < g.n1; ++r) {
      const double* src = frame.row_ptr(s.row + r) + s.col;
      std::copy(src, src + g.n2, dst);
      dst += g.n2;
    }
  }
}

Vector form_bm_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                     const BmRecord& rec) {
  Vector out(g.patch_size());
  form_bm_patch(buffer, g, rec, out);
  return out;
}

void deposit_bm(OutputAccumulator& acc, const PatchGeometry& g,
                const BmRecord& rec, const Eigen::Ref<const Vector>& patch,
                double weight) {
  if (patch.size() != g.patch_size() || acc.depth() != g.m) {
    throw ShapeError("deposit_bm: patch does not match geometry");
  }
  check_record(g, acc.values(0), rec);
  const std::ptrdiff_t slice = static_cast<std::ptrdiff_t>(g.n1) * g.n2;
  for (std::size_t s = 0; s < rec.slots.size(); ++s) {
    const BmSlot& slot = rec.slots[s];
    acc.deposit_slice(slot.depth, slot.row, slot.col, g.n1, g.n2,
                      patch.data() + static_cast<std::ptrdiff_t>(s) * slice,
                      weight);
  }
}

double patch_weight(const Eigen::Ref<const Vector>& code) {
  Eigen::Index nonzeros = 0;
  for (Eigen::Index i = 0; i < code.size(); ++i) {
    if (code(i) != 0.0) ++nonzeros;
  }
  return 1.0 / (1.0 + static_cast<double>(nonzeros));
}

}  // namespace tlvd
