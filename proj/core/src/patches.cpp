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

#include "tlvd/patches.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

int positions_along(int frame, int patch, int stride) {
  const int span = frame - patch;
  return span / stride + 1 + (span % stride != 0 ? 1 : 0);
}

int position_at(int index, int frame, int patch, int stride) {
  return std::min(index * stride, frame - patch);
}

}  // namespace

int PatchGeometry::position_rows() const {
  return positions_along(frame_h, n1, stride);
}

int PatchGeometry::position_cols() const {
  return positions_along(frame_w, n2, stride);
}

void PatchGeometry::validate() const {
  std::ostringstream msg;
  if (n1 <= 0 || n2 <= 0 || m <= 0) {
    msg << "patch dimensions must be positive (n1=" << n1 << ", n2=" << n2
        << ", m=" << m << ")";
  } else if (stride <= 0) {
    msg << "spatial stride must be positive (got " << stride << ")";
  } else if (n1 > frame_h || n2 > frame_w) {
    msg << "patch " << n1 << "x" << n2 << " does not fit a " << frame_h << "x"
        << frame_w << " frame";
  } else {
    return;
  }
  throw ConfigError(msg.str());
}

std::vector<PatchPos> serpentine_order(const PatchGeometry& g,
                                       ScanParity parity) {
  const int rows = g.position_rows();
  const int cols = g.position_cols();
  std::vector<PatchPos> order;
  order.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    const int row = position_at(i, g.frame_h, g.n1, g.stride);
    for (int k = 0; k < cols; ++k) {
      const int j = (i % 2 == 0) ? k : cols - 1 - k;
      order.push_back({row, position_at(j, g.frame_w, g.n2, g.stride)});
    }
  }
  if (parity == ScanParity::kOdd) std::reverse(order.begin(), order.end());
  return order;
}

Vector vectorize(const PatchTensor& t) {
  if (t.values.size() != static_cast<std::size_t>(t.n1) * t.n2 * t.m) {
    throw ShapeError("vectorize: tensor storage does not match its shape");
  }
  return Eigen::Map<const Vector>(t.values.data(),
                                  static_cast<Eigen::Index>(t.values.size()));
}

PatchTensor tensorize(const Eigen::Ref<const Vector>& v, int n1, int n2,
                      int m) {
  if (v.size() != static_cast<Eigen::Index>(n1) * n2 * m) {
    throw ShapeError("tensorize: vector length does not match n1*n2*m");
  }
  PatchTensor t{n1, n2, m, std::vector<double>(v.data(), v.data() + v.size())};
  return t;
}

void extract_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                   PatchPos pos, Eigen::Ref<Vector> out) {
  if (static_cast<int>(buffer.size()) != g.m) {
    throw ShapeError("extract_patch: buffer depth does not match m");
  }
  if (out.size() != g.patch_size()) {
    throw ShapeError("extract_patch: output length does not match n");
  }
  if (pos.row < 0 || pos.col < 0 || pos.row + g.n1 > buffer[0].height() ||
      pos.col + g.n2 > buffer[0].width()) {
    std::ostringstream msg;
    msg << "extract_patch: position (" << pos.row << ", " << pos.col
        << ") out of bounds";
    throw ShapeError(msg.str());
  }
  double* dst = out.data();
  for (int d = 0; d < g.m; ++d) {
    const Plane& frame = buffer[static_cast<std::size_t>(d)];
    for (int r = 0; r < g.n1; ++r) {
      const double* src = frame.row_ptr(pos.row + r) + pos.col;
      std::copy(src, src + g.n2, dst);
      dst += g.n2;
    }
  }
}

Vector extract_patch(std::span<const Plane> buffer, const PatchGeometry& g,
                     PatchPos pos) {
  Vector out(g.patch_size());
  extract_patch(buffer, g, pos, out);
  return out;
}

OutputAccumulator::OutputAccumulator(int frame_h, int frame_w, int depth)
    : frame_h_(frame_h), frame_w_(frame_w) {
  values_.assign(static_cast<std::size_t>(depth), Plane(frame_h, frame_w));
  weights_.assign(static_cast<std::size_t>(depth), Plane(frame_h, frame_w));
}

void OutputAccumulator::check_fits(int depth, int row, int col, int n1,
                                   int n2) const {
  if (depth < 0 || depth >= this->depth() || row < 0 || col < 0 ||
      row + n1 > frame_h_ || col + n2 > frame_w_) {
    std::ostringstream msg;
    msg << "deposit at (depth " << depth << ", row " << row << ", col "
        << col << ") of a " << n1 << "x" << n2 << " slice is out of bounds";
    throw ShapeError(msg.str());
  }
}

void OutputAccumulator::deposit_patch(const PatchGeometry& g, PatchPos pos,
                                      const Eigen::Ref<const Vector>& patch,
                                      double weight) {
  if (patch.size() != g.patch_size() || g.m != depth()) {
    throw ShapeError("deposit_patch: patch does not match geometry");
  }
  check_fits(g.m - 1, pos.row, pos.col, g.n1, g.n2);
  const std::ptrdiff_t slice = static_cast<std::ptrdiff_t>(g.n1) * g.n2;
  for (int d = 0; d < g.m; ++d) {
    deposit_slice(d, pos.row, pos.col, g.n1, g.n2, patch.data() + d * slice,
                  weight);
  }
}

void OutputAccumulator::deposit_slice(int depth, int row, int col, int n1,
                                      int n2, const double* slice,
                                      double weight) {
  check_fits(depth, row, col, n1, n2);
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error("deposit weight must be finite and non-negative");
  }
  if (weight == 0.0) return;
  Plane& v = values_[static_cast<std::size_t>(depth)];
  Plane& w = weights_[static_cast<std::size_t>(depth)];
  for (int r = 0; r < n1; ++r) {
    double* vrow = v.row_ptr(row + r) + col;
    double* wrow = w.row_ptr(row + r) + col;
    const double* src = slice + static_cast<std::ptrdiff_t>(r) * n2;
    for (int c = 0; c < n2; ++c) {
      vrow[c] += weight * src[c];
      wrow[c] += weight;
    }
  }
}

Plane OutputAccumulator::normalize(int depth) const {
  if (depth < 0 || depth >= this->depth()) {
    throw ShapeError("normalize: depth out of range");
  }
  const Plane& v = values_[static_cast<std::size_t>(depth)];
  const Plane& w = weights_[static_cast<std::size_t>(depth)];
  Plane out(frame_h_, frame_w_);
  for (int r = 0; r < frame_h_; ++r) {
    for (int c = 0; c < frame_w_; ++c) {
      const double weight = w(r, c);
      if (!(weight > 0.0)) {
        std::ostringstream msg;
        msg << "pixel (" << r << ", " << c << ") at depth " << depth
            << " received no patch contributions";
        throw CoverageError(msg.str());
      }
      out(r, c) = v(r, c) / weight;
    }
  }
  return out;
}

void OutputAccumulator::shift() {
  if (values_.empty()) return;
  std::rotate(values_.begin(), values_.begin() + 1, values_.end());
  std::rotate(weights_.begin(), weights_.begin() + 1, weights_.end());
  values_.back() = Plane(frame_h_, frame_w_);
  weights_.back() = Plane(frame_h_, frame_w_);
}

}  // namespace tlvd
