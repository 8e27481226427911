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
#include <stdexcept>
#include <string>

namespace tlvd {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// An iterative kernel (SVD, eigensolver) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Gamma + beta*I is not positive-definite, so the closed-form transform
// update is undefined. Callers keep the previous transform.
class DegenerateAccumulatorError : public Error {
 public:
  using Error::Error;
};

// A pixel reached normalization with zero accumulated weight.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::uint64_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        offset_(byte_offset) {}

  std::uint64_t byte_offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace tlvd
