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

#include "tlvd/scheduler.hpp"

#include <algorithm>

#include "tlvd/errors.hpp"
#include "tlvd/parallel.hpp"

namespace tlvd {

MinibatchScheduler::MinibatchScheduler(int patch_size, int minibatch_size,
                                       LeftoverPolicy policy)
    : patch_size_(patch_size),
      minibatch_size_(minibatch_size),
      policy_(policy),
      carry_(patch_size, 0),
      carry_alphas_(0) {
  if (patch_size <= 0 || minibatch_size <= 0) {
    throw ConfigError("scheduler: patch and mini-batch sizes must be positive");
  }
}

void MinibatchScheduler::set_carry(Matrix columns, Vector alphas) {
  if (columns.rows() != patch_size_ || alphas.size() != columns.cols() ||
      columns.cols() >= minibatch_size_) {
    throw ShapeError("scheduler: carried columns do not match configuration");
  }
  carry_ = std::move(columns);
  carry_alphas_ = std::move(alphas);
}

void MinibatchScheduler::reset() {
  carry_.resize(patch_size_, 0);
  carry_alphas_.resize(0);
  full_batches_ = 0;
}

void MinibatchScheduler::fill_columns(Eigen::Ref<Matrix> dst,
                                      std::size_t first,
                                      const ExtractFn& extract) const {
  parallel_for(static_cast<std::size_t>(dst.cols()), [&](std::size_t j) {
    extract(first + j, dst.col(static_cast<Eigen::Index>(j)));
  });
}

void MinibatchScheduler::sweep(LearnerState& learner, std::size_t patch_count,
                               double alpha, const ExtractFn& extract,
                               const DepositFn& deposit) {
  if (learner.dim() != patch_size_) {
    throw ShapeError("scheduler: learner size does not match patch size");
  }
  const auto total = static_cast<Eigen::Index>(patch_count);
  const Eigen::Index batch = minibatch_size_;
  Eigen::Index next = 0;

  for (;;) {
    const Eigen::Index carried = carry_.cols();
    const Eigen::Index need = batch - carried;
    const Eigen::Index available = total - next;

    if (available >= need ||
        (policy_ == LeftoverPolicy::kPartialBatch && available > 0)) {
      const Eigen::Index fresh = std::min(need, available);
      MiniBatch mb;
      mb.columns.resize(patch_size_, carried + fresh);
      mb.alphas.resize(carried + fresh);
      if (carried > 0) {
        mb.columns.leftCols(carried) = carry_;
        mb.alphas.head(carried) = carry_alphas_;
      }
      fill_columns(mb.columns.rightCols(fresh), static_cast<std::size_t>(next),
                   extract);
      mb.alphas.tail(fresh).setConstant(alpha);

      const MinibatchResult res = denoise_minibatch(learner, mb, carried);
      for (Eigen::Index j = 0; j < fresh; ++j) {
        deposit(static_cast<std::size_t>(next + j), res.denoised.col(j),
                res.codes.columns.col(j));
      }
      if (fresh == need) ++full_batches_;
      carry_.resize(patch_size_, 0);
      carry_alphas_.resize(0);
      next += fresh;
      continue;
    }

    if (available > 0) {
      // Leftover: denoise now with the current transform, learn later.
      MiniBatch tail;
      tail.columns.resize(patch_size_, available);
      fill_columns(tail.columns, static_cast<std::size_t>(next), extract);
      tail.alphas = Vector::Constant(available, alpha);
      SparseCodes codes = sparse_code(learner, tail);
      const Matrix patches = reconstruct(learner, codes);
      for (Eigen::Index j = 0; j < available; ++j) {
        deposit(static_cast<std::size_t>(next + j), patches.col(j),
                codes.columns.col(j));
      }
      Matrix grown(patch_size_, carried + available);
      grown.leftCols(carried) = carry_;
      grown.rightCols(available) = tail.columns;
      Vector grown_alphas(carried + available);
      grown_alphas.head(carried) = carry_alphas_;
      grown_alphas.tail(available) = tail.alphas;
      carry_ = std::move(grown);
      carry_alphas_ = std::move(grown_alphas);
    }
    break;
  }
}

}  // namespace tlvd
