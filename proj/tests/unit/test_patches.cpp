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

#include <algorithm>
#include <random>
#include <set>

#include "test_helpers.hpp"
#include "tlvd/errors.hpp"
#include "tlvd/patches.hpp"

namespace tlvd {
namespace {

using testing::random_clip;

PatchGeometry geom(int n1, int n2, int m, int h, int w, int stride = 1) {
  return PatchGeometry{n1, n2, m, h, w, stride};
}

TEST(Geometry, PatchCountFormula) {
  EXPECT_EQ(geom(8, 8, 9, 16, 16).patch_count(), 81);
  EXPECT_EQ(geom(8, 8, 9, 64, 64).patch_count(), 57 * 57);
  EXPECT_EQ(geom(8, 8, 9, 288, 352).patch_count(), 281 * 345);
  EXPECT_EQ(geom(8, 8, 9, 8, 8).patch_count(), 1);
}

TEST(Geometry, StrideKeepsLastPosition) {
  const PatchGeometry g = geom(4, 4, 1, 11, 10, 3);
  EXPECT_EQ(g.position_rows(), 4);  // 0 3 6 7
  EXPECT_EQ(g.position_cols(), 3);  // 0 3 6
  const auto order = serpentine_order(g, ScanParity::kEven);
  std::set<int> rows;
  for (const PatchPos& p : order) rows.insert(p.row);
  EXPECT_EQ(rows, (std::set<int>{0, 3, 6, 7}));
}

TEST(Geometry, ValidateRejects) {
  EXPECT_THROW(geom(9, 8, 1, 8, 8).validate(), ConfigError);
  EXPECT_THROW(geom(0, 8, 1, 8, 8).validate(), ConfigError);
  EXPECT_THROW(geom(2, 2, 1, 8, 8, 0).validate(), ConfigError);
  EXPECT_NO_THROW(geom(8, 8, 9, 8, 8).validate());
}

TEST(Vectorize, RoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1, 1);
  PatchTensor t{3, 4, 2, std::vector<double>(24)};
  for (double& v : t.values) v = dist(rng);
  const PatchTensor back = tensorize(vectorize(t), 3, 4, 2);
  EXPECT_EQ(back.values, t.values);
}

TEST(Vectorize, ScalarAndBasisElement) {
  PatchTensor s{1, 1, 1, {4.5}};
  EXPECT_EQ(vectorize(s)(0), 4.5);
  PatchTensor t{3, 4, 2, std::vector<double>(24, 0.0)};
  t.at(2, 1, 1) = 1.0;
  const Vector v = vectorize(t);
  const PatchGeometry g = geom(3, 4, 2, 10, 10);
  EXPECT_EQ(voxel_index(g, 2, 1, 1), (1 * 3 + 2) * 4 + 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v(i), i == voxel_index(g, 2, 1, 1) ? 1.0 : 0.0);
  }
}

TEST(Vectorize, ShapeMismatchThrows) {
  EXPECT_THROW(tensorize(Vector::Zero(5), 2, 2, 1), ShapeError);
  PatchTensor bad{2, 2, 2, std::vector<double>(3)};
  EXPECT_THROW(vectorize(bad), ShapeError);
}

TEST(Serpentine, ThreeByThreeOrders) {
  const PatchGeometry g = geom(2, 2, 1, 4, 4);
  const std::vector<PatchPos> even = serpentine_order(g, ScanParity::kEven);
  const std::vector<PatchPos> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1},
                                          {1, 0}, {2, 0}, {2, 1}, {2, 2}};
  EXPECT_EQ(even, expected);
  std::vector<PatchPos> reversed(expected.rbegin(), expected.rend());
  EXPECT_EQ(serpentine_order(g, ScanParity::kOdd), reversed);
}

TEST(Serpentine, SinglePosition) {
  const auto order = serpentine_order(geom(8, 8, 9, 8, 8), ScanParity::kOdd);
  ASSERT_EQ(order.size(), 1u);
  EXPECT_EQ(order[0], (PatchPos{0, 0}));
}

TEST(Serpentine, PermutationWithUnitSteps) {
  for (auto [h, w] : {std::pair{16, 16}, {20, 13}, {9, 31}}) {
    const PatchGeometry g = geom(8, 8, 9, h, w);
    for (ScanParity parity : {ScanParity::kEven, ScanParity::kOdd}) {
      const auto order = serpentine_order(g, parity);
      ASSERT_EQ(static_cast<int>(order.size()), g.patch_count());
      std::set<std::pair<int, int>> seen;
      for (const PatchPos& p : order) seen.insert({p.row, p.col});
      ASSERT_EQ(static_cast<int>(seen.size()), g.patch_count());
      for (std::size_t i = 1; i < order.size(); ++i) {
        const int step = std::abs(order[i].row - order[i - 1].row) +
                         std::abs(order[i].col - order[i - 1].col);
        ASSERT_EQ(step, 1);
      }
    }
  }
}

TEST(Extract, ConstantBuffer) {
  std::vector<Plane> buf(3, Plane(10, 10, 7.0));
  const Vector v = extract_patch(buf, geom(4, 4, 3, 10, 10), {2, 5});
  EXPECT_EQ(v, Vector::Constant(48, 7.0));
}

TEST(Extract, FlatIndexPattern) {
  const PatchGeometry g = geom(2, 3, 2, 2, 3);
  std::vector<Plane> buf(2, Plane(2, 3));
  for (int d = 0; d < 2; ++d)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 3; ++c) buf[d](r, c) = voxel_index(g, r, c, d);
  const Vector v = extract_patch(buf, g, {0, 0});
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_EQ(v(i), i);
}

TEST(Extract, OutOfBoundsThrows) {
  std::vector<Plane> buf(2, Plane(8, 8));
  const PatchGeometry g = geom(4, 4, 2, 8, 8);
  EXPECT_THROW(extract_patch(buf, g, {5, 0}), ShapeError);
  EXPECT_THROW(extract_patch(buf, g, {0, -1}), ShapeError);
  std::vector<Plane> shallow(1, Plane(8, 8));
  EXPECT_THROW(extract_patch(shallow, g, {0, 0}), ShapeError);
}

TEST(Deposit, AdjointOfExtract) {
  std::mt19937_64 rng(2);
  const PatchGeometry g = geom(3, 4, 3, 9, 11);
  const auto z = random_clip(rng, 9, 11, 3);
  std::normal_distribution<double> normal;
  Vector v(g.patch_size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  const PatchPos pos{4, 6};
  OutputAccumulator acc(9, 11, 3);
  acc.deposit_patch(g, pos, v, 1.0);
  double lhs = 0.0;
  for (int d = 0; d < 3; ++d)
    for (int r = 0; r < 9; ++r)
      for (int c = 0; c < 11; ++c) lhs += acc.values(d)(r, c) * z[d](r, c);
  const double rhs = v.dot(extract_patch(z, g, pos));
  EXPECT_NEAR(lhs, rhs, 1e-9 * std::abs(rhs));
}

TEST(Deposit, SingleDepositPlacesPatchOnly) {
  std::mt19937_64 rng(3);
  const PatchGeometry g = geom(2, 2, 2, 5, 5);
  const auto src = random_clip(rng, 5, 5, 2);
  const PatchPos pos{1, 2};
  OutputAccumulator acc(5, 5, 2);
  acc.deposit_patch(g, pos, extract_patch(src, g, pos), 1.0);
  for (int d = 0; d < 2; ++d)
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        const bool inside = r >= 1 && r < 3 && c >= 2 && c < 4;
        EXPECT_EQ(acc.values(d)(r, c), inside ? src[d](r, c) : 0.0);
        EXPECT_EQ(acc.weights(d)(r, c), inside ? 1.0 : 0.0);
      }
}

TEST(Deposit, OverlapAddsValuesAndWeights) {
  const PatchGeometry g = geom(2, 2, 1, 3, 3);
  OutputAccumulator acc(3, 3, 1);
  const Vector ones = Vector::Ones(4);
  acc.deposit_patch(g, {0, 0}, ones, 1.0);
  acc.deposit_patch(g, {1, 1}, ones, 1.0);
  EXPECT_EQ(acc.values(0)(1, 1), 2.0);
  EXPECT_EQ(acc.weights(0)(1, 1), 2.0);
  EXPECT_EQ(acc.weights(0)(0, 2), 0.0);
}

TEST(Deposit, WeightZeroIsNoOpAndNegativeRejected) {
  const PatchGeometry g = geom(2, 2, 1, 3, 3);
  OutputAccumulator acc(3, 3, 1);
  acc.deposit_patch(g, {0, 0}, Vector::Ones(4), 0.0);
  EXPECT_EQ(acc.values(0), Plane(3, 3));
  EXPECT_EQ(acc.weights(0), Plane(3, 3));
  EXPECT_THROW(acc.deposit_patch(g, {0, 0}, Vector::Ones(4), -1.0), Error);
  EXPECT_THROW(acc.deposit_patch(g, {2, 2}, Vector::Ones(4), 1.0), ShapeError);
}

TEST(Deposit, WeightedAverage) {
  const PatchGeometry g = geom(1, 1, 1, 1, 1);
  OutputAccumulator acc(1, 1, 1);
  acc.deposit_patch(g, {0, 0}, Vector::Constant(1, 2.0), 0.25);
  acc.deposit_patch(g, {0, 0}, Vector::Constant(1, 6.0), 0.75);
  EXPECT_DOUBLE_EQ(acc.normalize(0)(0, 0), 5.0);
}

TEST(Normalize, FullCoverageReconstructsSource) {
  std::mt19937_64 rng(4);
  for (int stride : {1, 3}) {
    const PatchGeometry g = geom(4, 3, 3, 13, 10, stride);
    const auto src = random_clip(rng, 13, 10, 3);
    OutputAccumulator acc(13, 10, 3);
    for (const PatchPos& p : serpentine_order(g, ScanParity::kEven)) {
      acc.deposit_patch(g, p, extract_patch(src, g, p), 1.0);
    }
    for (int d = 0; d < 3; ++d) {
      EXPECT_LE(testing::max_abs_diff(acc.normalize(d), src[d]), 1e-12);
    }
  }
}

TEST(Normalize, ConstantDepositsGiveConstantFrame) {
  const PatchGeometry g = geom(2, 2, 2, 4, 4);
  OutputAccumulator acc(4, 4, 2);
  for (const PatchPos& p : serpentine_order(g, ScanParity::kOdd)) {
    acc.deposit_patch(g, p, Vector::Constant(8, 3.25), 0.5);
  }
  EXPECT_EQ(acc.normalize_oldest(), Plane(4, 4, 3.25));
}

TEST(Normalize, UncoveredPixelIsCoverageError) {
  const PatchGeometry g = geom(2, 2, 1, 3, 3);
  OutputAccumulator acc(3, 3, 1);
  acc.deposit_patch(g, {0, 0}, Vector::Ones(4), 1.0);
  EXPECT_THROW(acc.normalize(0), CoverageError);
}

TEST(Accumulator, ShiftEvictsOldestTogether) {
  const PatchGeometry g = geom(1, 1, 3, 1, 1);
  OutputAccumulator acc(1, 1, 3);
  Vector v(3);
  v << 1.0, 2.0, 3.0;
  acc.deposit_patch(g, {0, 0}, v, 1.0);
  acc.shift();
  EXPECT_EQ(acc.values(0)(0, 0), 2.0);
  EXPECT_EQ(acc.values(1)(0, 0), 3.0);
  EXPECT_EQ(acc.values(2)(0, 0), 0.0);
  EXPECT_EQ(acc.weights(2)(0, 0), 0.0);
  EXPECT_EQ(acc.weights(0)(0, 0), 1.0);
}

}  // namespace
}  // namespace tlvd
