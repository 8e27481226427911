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

#include "tlvd/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tlvd/errors.hpp"
#include "tlvd/parallel.hpp"

namespace tlvd {
namespace {

// Fixed column-chunk width for the large products. Chunk boundaries do not
// depend on the worker count, so results are identical for any count.
constexpr Eigen::Index kChunk = 256;

void require_batch(const LearnerState& state, const MiniBatch& batch) {
  if (batch.columns.rows() != state.dim()) {
    std::ostringstream msg;
    msg << "mini-batch rows " << batch.columns.rows()
        << " do not match transform size " << state.dim();
    throw ShapeError(msg.str());
  }
  if (batch.alphas.size() != batch.columns.cols()) {
    throw ShapeError("mini-batch alphas must have one entry per column");
  }
}

template <typename Fn>
void for_each_chunk(Eigen::Index cols, Fn&& fn) {
  const auto chunks = static_cast<std::size_t>((cols + kChunk - 1) / kChunk);
  parallel_for(chunks, [&](std::size_t c) {
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * kChunk;
    fn(begin, std::min(kChunk, cols - begin));
  });
}

}  // namespace

LearnerState make_learner(const Matrix& initial_w, double rho,
                          double lambda0) {
  if (initial_w.rows() != initial_w.cols()) {
    throw ShapeError("make_learner: initial transform must be square");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ConfigError("make_learner: forgetting factor must lie in [0, 1]");
  }
  if (!(lambda0 >= 0.0)) {
    throw ConfigError("make_learner: lambda0 must be non-negative");
  }
  const Eigen::Index n = initial_w.rows();
  LearnerState s;
  s.w = initial_w;
  s.w_inverse = linalg::invert(initial_w);
  s.gamma = Matrix::Zero(n, n);
  s.theta = Matrix::Zero(n, n);
  s.rho = rho;
  s.lambda0 = lambda0;
  return s;
}

Vector hard_threshold(const Vector& d, double alpha) {
  Vector out = d;
  for (Eigen::Index r = 0; r < out.size(); ++r) {
    if (std::abs(out(r)) < alpha) out(r) = 0.0;
  }
  return out;
}

void hard_threshold_inplace(Eigen::Ref<Matrix> columns,
                            const Eigen::Ref<const Vector>& alphas) {
  for (Eigen::Index i = 0; i < columns.cols(); ++i) {
    const double alpha = alphas(i);
    auto col = columns.col(i);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) < alpha) col(r) = 0.0;
    }
  }
}

SparseCodes sparse_code(const LearnerState& state, const MiniBatch& batch) {
  require_batch(state, batch);
  SparseCodes codes;
  codes.columns.resize(batch.columns.rows(), batch.columns.cols());
  for_each_chunk(batch.columns.cols(), [&](Eigen::Index begin,
                                           Eigen::Index width) {
    auto out = codes.columns.middleCols(begin, width);
    out.noalias() = state.w * batch.columns.middleCols(begin, width);
    hard_threshold_inplace(out, batch.alphas.segment(begin, width));
  });
  return codes;
}

Matrix reconstruct(const LearnerState& state, const SparseCodes& codes) {
  if (codes.columns.rows() != state.dim()) {
    throw ShapeError("reconstruct: code length does not match transform");
  }
  Matrix out(codes.columns.rows(), codes.columns.cols());
  for_each_chunk(codes.columns.cols(), [&](Eigen::Index begin,
                                           Eigen::Index width) {
    out.middleCols(begin, width).noalias() =
        state.w_inverse * codes.columns.middleCols(begin, width);
  });
  return out;
}

double regularizer_value(const Matrix& w) {
  if (w.rows() != w.cols()) {
    throw ShapeError("regularizer_value: transform must be square");
  }
  Eigen::PartialPivLU<Matrix> lu(w);
  // log|det| as a sum over the LU diagonal avoids overflow for large n.
  const auto diag = lu.matrixLU().diagonal();
  double log_abs_det = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double v = std::abs(diag(i));
    if (v == 0.0) return std::numeric_limits<double>::infinity();
    log_abs_det += std::log(v);
  }
  return -log_abs_det + w.squaredNorm();
}

void accumulate(LearnerState& state, const MiniBatch& batch,
                const SparseCodes& codes) {
  require_batch(state, batch);
  if (codes.columns.rows() != batch.columns.rows() ||
      codes.columns.cols() != batch.columns.cols()) {
    throw ShapeError("accumulate: codes do not match mini-batch shape");
  }
  const Matrix& u = batch.columns;
  state.gamma *= state.rho;
  state.gamma.selfadjointView<Eigen::Lower>().rankUpdate(u);
  state.gamma.triangularView<Eigen::StrictlyUpper>() =
      state.gamma.transpose();
  state.theta *= state.rho;
  state.theta.noalias() += u * codes.columns.transpose();
  state.beta = state.rho * state.beta + state.lambda0 * u.squaredNorm();
  ++state.minibatch_count;
}

void transform_update(LearnerState& state) {
  const Eigen::Index n = state.dim();
  if (!(state.beta > 0.0) || !std::isfinite(state.beta)) {
    throw DegenerateAccumulatorError(
        "transform_update: beta is zero; no data has been accumulated");
  }

  Matrix shifted = state.gamma;
  shifted.diagonal().array() += state.beta;

  SymmetricRoot q;
  try {
    q = linalg::symmetric_psd_root(shifted);
  } catch (const NotPositiveDefiniteError& e) {
    throw DegenerateAccumulatorError(std::string("transform_update: ") +
                                     e.what());
  }

  const Matrix b = q.inverse_root * state.theta;
  const SvdTriple svd = linalg::full_svd(b);
  const Vector& sigma = svd.singulars;
  const Vector gain =
      0.5 * (sigma.array() + (sigma.array().square() + 2.0 * state.beta).sqrt())
                .matrix();

  Matrix w(n, n);
  w.noalias() = svd.right * gain.asDiagonal() * svd.left.transpose();
  Matrix updated(n, n);
  updated.noalias() = w * q.inverse_root;

  Matrix inverse = linalg::invert(updated);
  state.w = std::move(updated);
  state.w_inverse = std::move(inverse);
}

MinibatchResult denoise_minibatch(LearnerState& state, const MiniBatch& batch) {
  return denoise_minibatch(state, batch, 0);
}

MinibatchResult denoise_minibatch(LearnerState& state, const MiniBatch& batch,
                                  Eigen::Index first_output) {
  require_batch(state, batch);
  if (first_output < 0 || first_output > batch.columns.cols()) {
    throw ShapeError("denoise_minibatch: first output column out of range");
  }
  MinibatchResult result;

  if (!state.frozen) {
    SparseCodes codes = sparse_code(state, batch);
    const Matrix theta_before = state.theta;
    accumulate(state, batch, codes);
    // Later alternations replace this batch's contribution to theta.
    Matrix theta_base;
    if (state.alternations > 1) theta_base = state.rho * theta_before;

    for (int alt = 0; alt < std::max(1, state.alternations); ++alt) {
      if (alt > 0) {
        codes = sparse_code(state, batch);
        state.theta = theta_base;
        state.theta.noalias() += batch.columns * codes.columns.transpose();
      }
      try {
        transform_update(state);
      } catch (const DegenerateAccumulatorError&) {
        ++state.skipped_updates;
        break;
      }
    }
  } else {
    ++state.minibatch_count;
  }

  if (first_output == 0) {
    result.codes = sparse_code(state, batch);
  } else {
    const Eigen::Index count = batch.columns.cols() - first_output;
    const MiniBatch outputs{batch.columns.rightCols(count),
                            batch.alphas.tail(count)};
    result.codes = sparse_code(state, outputs);
  }
  result.denoised = reconstruct(state, result.codes);
  return result;
}

}  // namespace tlvd
