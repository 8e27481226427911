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


#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tlvd/dct.hpp"
#include "tlvd/patches.hpp"

namespace tlvd {
namespace {

TEST(Dct, MatchesCosineFormula) {
  for (int n : {1, 2, 3, 8, 9}) {
    EXPECT_LT((dct_matrix(n) - oracle::dct_by_formula(n)).norm(), 1e-13) << n;
  }
}

TEST(Dct, Orthonormal) {
  const Matrix d = dct_matrix(8);
  EXPECT_LT((d * d.transpose() - Matrix::Identity(8, 8)).norm(), 1e-13);
}

TEST(Dct, ThreeDimensionalMatchesSeparableProduct) {
  const int n1 = 3, n2 = 4, m = 2;
  const Matrix w = dct3d_matrix(n1, n2, m);
  ASSERT_EQ(w.rows(), n1 * n2 * m);
  const Matrix d1 = oracle::dct_by_formula(n1);
  const Matrix d2 = oracle::dct_by_formula(n2);
  const Matrix dm = oracle::dct_by_formula(m);
  PatchGeometry g{n1, n2, m, 8, 8, 1};
  // Row (kd, kr, kc), column (d, r, c): product of the 1D coefficients.
  for (int kd = 0; kd < m; ++kd)
    for (int kr = 0; kr < n1; ++kr)
      for (int kc = 0; kc < n2; ++kc)
        for (int d = 0; d < m; ++d)
          for (int r = 0; r < n1; ++r)
            for (int c = 0; c < n2; ++c) {
              const double expected = dm(kd, d) * d1(kr, r) * d2(kc, c);
              ASSERT_NEAR(w(voxel_index(g, kr, kc, kd), voxel_index(g, r, c, d)),
                          expected, 1e-14);
            }
  EXPECT_LT((w * w.transpose() - Matrix::Identity(24, 24)).norm(), 1e-13);
}

TEST(Dct, ConstantPatchHasSingleCoefficient) {
  const Matrix w = dct3d_matrix(8, 8, 9);
  const Vector u = Vector::Constant(576, 10.0);
  const Vector d = w * u;
  EXPECT_NEAR(d(0), 10.0 * std::sqrt(576.0), 1e-10);
  EXPECT_LT(d.tail(575).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace tlvd
