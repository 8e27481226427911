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

#include "tlvd/linalg.hpp"

namespace tlvd {

// Orthonormal DCT-II matrix of the given size; row k is the k-th basis
// vector.
Matrix dct_matrix(int size);

// Separable 3D DCT on n1 x n2 x m patches: kron(D_m, kron(D_n1, D_n2)).
// The Kronecker ordering matches patch vectorization (column fastest, then
// row, then temporal depth), so it can be applied directly to patch vectors.
Matrix dct3d_matrix(int n1, int n2, int m);

}  // namespace tlvd
