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

#include "tlvd/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tlvd/errors.hpp"

namespace tlvd::linalg {
namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << a.rows() << "x"
        << a.cols();
    throw ShapeError(msg.str());
  }
}

void require_symmetric(const Matrix& a, const char* what) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream msg;
    msg << what << ": matrix is not symmetric (max asymmetry " << asym << ")";
    throw ShapeError(msg.str());
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> spd_eigen(const Matrix& a,
                                                 const char* what) {
  require_square(a, what);
  require_finite(a, what);
  require_symmetric(a, what);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError(std::string(what) +
                           ": symmetric eigensolver did not converge");
  }
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << what << ": matrix is not positive-definite (smallest eigenvalue "
        << lo << ")";
    throw NotPositiveDefiniteError(msg.str());
  }
  return es;
}

}  // namespace

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw ShapeError(std::string(what) + ": matrix has non-finite entries");
  }
}

Matrix symmetric_psd_sqrt(const Matrix& a) {
  const auto es = spd_eigen(a, "symmetric_psd_sqrt");
  const Matrix& v = es.eigenvectors();
  return v * es.eigenvalues().cwiseSqrt().asDiagonal() * v.transpose();
}

SymmetricRoot symmetric_psd_root(const Matrix& a) {
  const auto es = spd_eigen(a, "symmetric_psd_root");
  const Matrix& v = es.eigenvectors();
  const Vector s = es.eigenvalues().cwiseSqrt();
  SymmetricRoot out;
  out.root = v * s.asDiagonal() * v.transpose();
  out.inverse_root = v * s.cwiseInverse().asDiagonal() * v.transpose();
  return out;
}

Matrix cholesky_factor(const Matrix& a) {
  require_square(a, "cholesky_factor");
  require_finite(a, "cholesky_factor");
  require_symmetric(a, "cholesky_factor");
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError(
        "cholesky_factor: matrix is not positive-definite");
  }
  return llt.matrixL();
}

SvdTriple full_svd(const Matrix& a) {
  require_square(a, "full_svd");
  require_finite(a, "full_svd");
  const Eigen::Index n = a.rows();

  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "full_svd: decomposition of " << n << "x" << n
        << " matrix did not converge (Eigen info " << int(svd.info())
        << ", max |a| " << a.cwiseAbs().maxCoeff() << ")";
    throw ConvergenceError(msg.str());
  }

  SvdTriple out{svd.matrixU(), svd.singularValues(), svd.matrixV()};

  // Eigen already returns descending order; enforce it so the convention
  // does not depend on the backend.
  for (Eigen::Index i = 1; i < n; ++i) {
    if (out.singulars(i) > out.singulars(i - 1)) {
      throw ConvergenceError("full_svd: singular values not sorted");
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    auto col = out.left.col(j);
    const double tol = 1e-12 * col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > tol) {
        if (col(i) < 0.0) {
          out.left.col(j) *= -1.0;
          out.right.col(j) *= -1.0;
        }
        break;
      }
    }
  }
  return out;
}

Matrix invert(const Matrix& a, double condition_cap) {
  require_square(a, "invert");
  require_finite(a, "invert");
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / condition_cap)) {
    std::ostringstream msg;
    msg << "invert: matrix is singular or ill-conditioned (rcond " << rcond
        << ", cap " << condition_cap << ")";
    throw SingularMatrixError(msg.str());
  }
  return lu.inverse();
}

double condition_number(const Matrix& a) {
  require_square(a, "condition_number");
  Eigen::BDCSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

}  // namespace tlvd::linalg
