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

#include <cstddef>
#include <span>
#include <vector>

namespace tlvd {

// A single-channel frame of real-valued pixels, row-major.
class Plane {
 public:
  Plane() = default;
  Plane(int height, int width, double fill = 0.0)
      : height_(height),
        width_(width),
        pixels_(static_cast<std::size_t>(height) * width, fill) {}

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return pixels_.size(); }

  double& operator()(int row, int col) {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  double operator()(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }

  const double* row_ptr(int row) const {
    return pixels_.data() + static_cast<std::size_t>(row) * width_;
  }
  double* row_ptr(int row) {
    return pixels_.data() + static_cast<std::size_t>(row) * width_;
  }

  std::span<double> pixels() { return pixels_; }
  std::span<const double> pixels() const { return pixels_; }

  bool same_shape(const Plane& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> pixels_;
};

}  // namespace tlvd
