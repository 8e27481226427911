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

#include <cstdint>

#include "tlvd/linalg.hpp"

namespace tlvd {

// Online state of the square sparsifying transform learner.
//
// gamma, theta and beta are the forgetting-factor weighted sums
//   gamma = sum_j rho^(J-j) U_j U_j^T
//   theta = sum_j rho^(J-j) U_j X_j^T
//   beta  = sum_j rho^(J-j) lambda0 ||U_j||_F^2
// over the mini-batches seen so far. They are sufficient statistics for
// the closed-form transform update.
struct LearnerState {
  Matrix w;
  Matrix w_inverse;  // cached inverse of w, kept in sync by the learner
  Matrix gamma;
  Matrix theta;
  double beta = 0.0;
  double rho = 1.0;
  double lambda0 = 1e-2;
  std::uint64_t minibatch_count = 0;
  // Mini-batches whose transform update was skipped because the
  // accumulators were degenerate.
  std::uint64_t skipped_updates = 0;
  // Sparse-coding / transform-update alternations per mini-batch.
  int alternations = 1;
  // When set, w is never updated (fixed-transform baseline) and the
  // accumulators are left untouched.
  bool frozen = false;

  Eigen::Index dim() const { return w.rows(); }
};

// Columns are vectorized patches; alphas[i] is the hard threshold for
// column i.
struct MiniBatch {
  Matrix columns;
  Vector alphas;
};

struct SparseCodes {
  Matrix columns;
};

struct MinibatchResult {
  Matrix denoised;
  SparseCodes codes;
};

// Learner starting from initial_w with zeroed accumulators.
LearnerState make_learner(const Matrix& initial_w, double rho, double lambda0);

// Elementwise hard threshold: entries with |d_r| < alpha become exactly
// zero; entries with |d_r| >= alpha are kept.
Vector hard_threshold(const Vector& d, double alpha);
void hard_threshold_inplace(Eigen::Ref<Matrix> columns,
                            const Eigen::Ref<const Vector>& alphas);

// Column i of the result is hard_threshold(w * u_i, alphas[i]).
SparseCodes sparse_code(const LearnerState& state, const MiniBatch& batch);

// Returns w^{-1} * codes.
Matrix reconstruct(const LearnerState& state, const SparseCodes& codes);

// -log|det w| + ||w||_F^2, or +inf when w is singular.
double regularizer_value(const Matrix& w);

// gamma <- rho*gamma + U U^T, theta <- rho*theta + U X^T,
// beta <- rho*beta + lambda0*||U||_F^2, and increments minibatch_count.
void accumulate(LearnerState& state, const MiniBatch& batch,
                const SparseCodes& codes);

// Closed-form minimizer of the accumulated transform-update objective:
//   w = 0.5 * Psi * (Sigma + (Sigma^2 + 2*beta*I)^{1/2}) * Phi^T * Q^{-1}
// with Q Q^T = gamma + beta*I and Phi Sigma Psi^T = svd(Q^{-1} theta).
// Throws DegenerateAccumulatorError (state unchanged) when gamma + beta*I
// is not positive-definite.
void transform_update(LearnerState& state);

// One mini-batch step: sparse code with the current transform, accumulate,
// update the transform, sparse code again and reconstruct. When the update
// is degenerate the previous transform is kept.
MinibatchResult denoise_minibatch(LearnerState& state, const MiniBatch& batch);

// As above, but codes and reconstructions cover only columns
// [first_output, cols); earlier columns are learned from and not returned.
MinibatchResult denoise_minibatch(LearnerState& state, const MiniBatch& batch,
                                  Eigen::Index first_output);

}  // namespace tlvd
