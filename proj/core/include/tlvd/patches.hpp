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

namespace tlvd {

// Geometry of n1 x n2 x m spatio-temporal patches over a stack of m
// frame_h x frame_w frames.
//
// Vectorization order: column index fastest, then row, then temporal
// depth, i.e. flat index (d * n1 + r) * n2 + c. The 3D DCT initializer
// uses the same ordering.
struct PatchGeometry {
  int n1 = 8;
  int n2 = 8;
  int m = 9;
  int frame_h = 0;
  int frame_w = 0;
  int stride = 1;

  int patch_size() const { return n1 * n2 * m; }
  // Number of distinct top-left rows / columns. With stride > 1 the last
  // row/column that still fits is always included so every pixel is
  // covered.
  int position_rows() const;
  int position_cols() const;
  int patch_count() const { return position_rows() * position_cols(); }

  // Throws ConfigError for inconsistent geometry.
  void validate() const;
};

struct PatchPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const PatchPos&, const PatchPos&) = default;
};

enum class ScanParity { kEven, kOdd };

inline int voxel_index(const PatchGeometry& g, int row, int col, int depth) {
  return (depth * g.n1 + row) * g.n2 + col;
}

// Raster scan of patch positions with the column direction reversed on
// every other line. With odd parity the whole sequence is reversed, so
// consecutive buffers are scanned in opposite directions.
std::vector<PatchPos> serpentine_order(const PatchGeometry& g,
                                       ScanParity parity);

// An n1 x n2 x m block of values stored in vectorization order.
struct PatchTensor {
  int n1 = 0;
  int n2 = 0;
  int m = 0;
  std::vector<double> values;

  double& at(int row, int col, int depth) {
    return values[static_cast<std::size_t>((depth * n1 + row) * n2 + col)];
  }
  double at(int row, int col, int depth) const {
    return values[static_cast<std::size_t>((depth * n1 + row) * n2 + col)];
  }
};

Vector vectorize(const PatchTensor& t);
PatchTensor tensorize(const Eigen::Ref<const Vector>& v, int n1, int n2, int m);

// Copies the patch at pos spanning all frames of buffer (depth 0 = oldest)
// into out. Throws ShapeError when the patch does not fit.
void extract_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                   PatchPos pos, Eigen::Ref<Vector> out);
Vector extract_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                     PatchPos pos);

// Weighted value sums and weight sums for the m frames of the output
// buffer. Depth 0 is the oldest frame.
class OutputAccumulator {
 public:
  OutputAccumulator() = default;
  OutputAccumulator(int frame_h, int frame_w, int depth);

  int frame_h() const { return frame_h_; }
  int frame_w() const { return frame_w_; }
  int depth() const { return static_cast<int>(values_.size()); }

  // values += weight * patch and weights += weight over the covered voxels.
  void deposit_patch(const PatchGeometry& g, PatchPos pos,
                     const Eigen::Ref<const Vector>& patch, double weight);

  // Adds one n1 x n2 slice (row-major, n2 fastest) at (depth, row, col).
  void deposit_slice(int depth, int row, int col, int n1, int n2,
                     const double* slice, double weight);

  // values / weights on the given plane. Throws CoverageError if any pixel
  // has zero weight.
  Plane normalize(int depth) const;
  Plane normalize_oldest() const { return normalize(0); }

  // Drops the oldest plane pair and appends an empty newest plane pair.
  void shift();

  const Plane& values(int depth) const { return values_[depth]; }
  const Plane& weights(int depth) const { return weights_[depth]; }
  Plane& values(int depth) { return values_[depth]; }
  Plane& weights(int depth) { return weights_[depth]; }

 private:
  void check_fits(int depth, int row, int col, int n1, int n2) const;

  int frame_h_ = 0;
  int frame_w_ = 0;
  std::vector<Plane> values_;
  std::vector<Plane> weights_;
};

}  // namespace tlvd
