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
#include <functional>

#include "tlvd/config.hpp"
#include "tlvd/transform.hpp"

namespace tlvd {

// Groups the patches of successive buffers into mini-batches of exactly
// minibatch_size columns and drives the learner over them.
//
// With LeftoverPolicy::kCarryOver, the patches at the end of a buffer that
// do not fill a mini-batch are denoised right away with the current
// transform (so the buffer's output is complete) and are kept as the first
// columns of the next buffer's first mini-batch, where they contribute to
// learning only. Every patch is therefore deposited exactly once per
// buffer and every learning mini-batch has exactly minibatch_size columns.
class MinibatchScheduler {
 public:
  // Writes patch `index` of the current buffer into out.
  using ExtractFn =
      std::function<void(std::size_t index, Eigen::Ref<Vector> out)>;
  // Receives the denoised patch and its final sparse code. Called in
  // increasing index order.
  using DepositFn = std::function<void(std::size_t index,
                                       const Eigen::Ref<const Vector>& patch,
                                       const Eigen::Ref<const Vector>& code)>;

  MinibatchScheduler() = default;
  MinibatchScheduler(int patch_size, int minibatch_size,
                     LeftoverPolicy policy);

  // Processes patches 0..patch_count-1 of one buffer with threshold alpha.
  void sweep(LearnerState& learner, std::size_t patch_count, double alpha,
             const ExtractFn& extract, const DepositFn& deposit);

  // Columns (and their thresholds) waiting to complete a mini-batch.
  const Matrix& carry() const { return carry_; }
  const Vector& carry_alphas() const { return carry_alphas_; }
  void set_carry(Matrix columns, Vector alphas);
  void reset();

  int patch_size() const { return patch_size_; }
  int minibatch_size() const { return minibatch_size_; }
  LeftoverPolicy policy() const { return policy_; }
  std::size_t full_batches() const { return full_batches_; }

 private:
  void fill_columns(Eigen::Ref<Matrix> dst, std::size_t first,
                    const ExtractFn& extract) const;

  int patch_size_ = 0;
  int minibatch_size_ = 0;
  LeftoverPolicy policy_ = LeftoverPolicy::kCarryOver;
  Matrix carry_;
  Vector carry_alphas_;
  std::size_t full_batches_ = 0;
};

}  // namespace tlvd
