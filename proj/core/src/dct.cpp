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

#include "tlvd/dct.hpp"

#include <cmath>
#include <numbers>

#include "tlvd/errors.hpp"

namespace tlvd {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Matrix dct_matrix(int size) {
  if (size <= 0) throw ShapeError("dct_matrix: size must be positive");
  Matrix d(size, size);
  const double n = size;
  for (int k = 0; k < size; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < size; ++i) {
      d(k, i) = scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
    }
  }
  return d;
}

Matrix dct3d_matrix(int n1, int n2, int m) {
  return kron(dct_matrix(m), kron(dct_matrix(n1), dct_matrix(n2)));
}

}  // namespace tlvd
