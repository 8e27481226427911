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

#include <Eigen/Dense>

namespace tlvd {

// Dense real matrix. Storage is Eigen's default column-major layout.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Full singular value decomposition a = left * diag(singulars) * right^T.
//
// Singular values are sorted in descending order. Each pair of singular
// vectors is sign-normalized so that the first entry of the left vector
// whose magnitude exceeds a small relative tolerance is non-negative; this
// makes the decomposition reproducible run-to-run.
struct SvdTriple {
  Matrix left;
  Vector singulars;
  Matrix right;
};

// A symmetric square root of an SPD matrix together with its inverse.
struct SymmetricRoot {
  Matrix root;
  Matrix inverse_root;
};

namespace linalg {

inline constexpr double kDefaultConditionCap = 1e12;

// Throws ShapeError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

// Returns Q with Q * Q^T == a, computed as V * sqrt(D) * V^T from the
// symmetric eigendecomposition a = V * D * V^T. Q is itself symmetric.
// Throws NotPositiveDefiniteError when a has a non-positive eigenvalue.
Matrix symmetric_psd_sqrt(const Matrix& a);

// Same factorization as symmetric_psd_sqrt, additionally returning Q^{-1}
// from the same eigendecomposition.
SymmetricRoot symmetric_psd_root(const Matrix& a);

// Lower-triangular Cholesky factor L with L * L^T == a. Documented
// alternative to the symmetric root.
Matrix cholesky_factor(const Matrix& a);

SvdTriple full_svd(const Matrix& a);

// Inverse via partial-pivot LU. Throws SingularMatrixError when the
// reciprocal condition estimate falls below 1 / condition_cap.
Matrix invert(const Matrix& a, double condition_cap = kDefaultConditionCap);

// Ratio of largest to smallest singular value; +inf for singular input.
double condition_number(const Matrix& a);

}  // namespace linalg
}  // namespace tlvd
