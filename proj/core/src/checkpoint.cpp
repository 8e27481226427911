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

#include "tlvd/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string_view>

#include "tlvd/errors.hpp"
#include "tlvd/pipeline.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace tlvd {
namespace {

constexpr std::uint32_t kVersion = 1;
constexpr std::string_view kLearnerMagic = "tlvd-lrn";
constexpr std::string_view kEngineMagic = "tlvd-eng";

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void bytes(std::string_view s) { out_.write(s.data(), std::streamsize(s.size())); }
  void doubles(const double* p, std::size_t count) {
    out_.write(reinterpret_cast<const char*>(p),
               static_cast<std::streamsize>(count * sizeof(double)));
  }
  void matrix(const Matrix& m) { doubles(m.data(), std::size_t(m.size())); }
  void plane(const Plane& p) { doubles(p.pixels().data(), p.size()); }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T get() {
    T v{};
    read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
  }
  void expect(std::string_view magic) {
    std::string buf(magic.size(), '\0');
    const std::uint64_t at = offset_;
    read(buf.data(), buf.size());
    if (buf != magic) {
      throw ParseError("checkpoint: bad magic, expected '" +
                           std::string(magic) + "'",
                       at);
    }
  }
  void version() {
    const std::uint64_t at = offset_;
    const auto v = get<std::uint32_t>();
    if (v != kVersion) {
      throw ParseError("checkpoint: unsupported version " + std::to_string(v),
                       at);
    }
  }
  void doubles(double* p, std::size_t count) {
    read(reinterpret_cast<char*>(p), count * sizeof(double));
  }
  Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    doubles(m.data(), std::size_t(m.size()));
    return m;
  }
  Plane plane(int h, int w) {
    Plane p(h, w);
    doubles(p.pixels().data(), p.size());
    return p;
  }
  std::uint64_t offset() const { return offset_; }

 private:
  void read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw ParseError("checkpoint: unexpected end of data", offset_ + in_.gcount());
    }
    offset_ += n;
  }

  std::istream& in_;
  std::uint64_t offset_ = 0;
};

void write_learner(Writer& w, const LearnerState& s) {
  w.bytes(kLearnerMagic);
  w.put<std::uint32_t>(kVersion);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(s.dim()));
  w.put<double>(s.rho);
  w.put<double>(s.lambda0);
  w.put<double>(s.beta);
  w.put<std::uint64_t>(s.minibatch_count);
  w.put<std::uint64_t>(s.skipped_updates);
  w.put<std::int32_t>(s.alternations);
  w.put<std::uint8_t>(s.frozen ? 1 : 0);
  w.matrix(s.w);
  w.matrix(s.gamma);
  w.matrix(s.theta);
}

LearnerState read_learner(Reader& r) {
  r.expect(kLearnerMagic);
  r.version();
  const std::uint64_t at = r.offset();
  const auto n = r.get<std::uint64_t>();
  if (n == 0 || n > 65536) {
    throw ParseError("checkpoint: implausible transform size " +
                         std::to_string(n),
                     at);
  }
  LearnerState s;
  s.rho = r.get<double>();
  s.lambda0 = r.get<double>();
  s.beta = r.get<double>();
  s.minibatch_count = r.get<std::uint64_t>();
  s.skipped_updates = r.get<std::uint64_t>();
  s.alternations = r.get<std::int32_t>();
  s.frozen = r.get<std::uint8_t>() != 0;
  const auto dim = static_cast<Eigen::Index>(n);
  s.w = r.matrix(dim, dim);
  s.gamma = r.matrix(dim, dim);
  s.theta = r.matrix(dim, dim);
  s.w_inverse = linalg::invert(s.w);
  return s;
}

void write_carry(Writer& w, const MinibatchScheduler& s) {
  w.put<std::uint64_t>(static_cast<std::uint64_t>(s.carry().cols()));
  w.matrix(s.carry());
  w.doubles(s.carry_alphas().data(), std::size_t(s.carry_alphas().size()));
  w.put<std::uint64_t>(s.full_batches());
}

void read_carry(Reader& r, MinibatchScheduler& s) {
  const std::uint64_t at = r.offset();
  const auto cols = r.get<std::uint64_t>();
  if (cols >= static_cast<std::uint64_t>(s.minibatch_size())) {
    throw ParseError("checkpoint: carried column count exceeds mini-batch", at);
  }
  Matrix carry = r.matrix(s.patch_size(), static_cast<Eigen::Index>(cols));
  Vector alphas(static_cast<Eigen::Index>(cols));
  r.doubles(alphas.data(), std::size_t(cols));
  r.get<std::uint64_t>();  // full-batch counter is informational
  s.set_carry(std::move(carry), std::move(alphas));
}

void write_config(Writer& w, const DenoiseConfig& c) {
  w.put<std::int32_t>(c.n1);
  w.put<std::int32_t>(c.n2);
  w.put<std::int32_t>(c.m);
  w.put<std::int32_t>(c.stride);
  w.put<double>(c.alpha0);
  w.put<double>(c.lambda0);
  w.put<std::int32_t>(c.minibatch_size);
  w.put<std::uint8_t>(c.rho ? 1 : 0);
  w.put<double>(c.rho.value_or(0.0));
  w.put<std::uint8_t>(c.passes ? 1 : 0);
  w.put<std::int32_t>(c.passes.value_or(0));
  w.put<double>(c.sigma);
  w.put<std::int32_t>(c.h1);
  w.put<std::int32_t>(c.h2);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(c.mode));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(c.leftover));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(c.bm_source));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(c.weighting));
  w.put<std::uint64_t>(c.seed);
  w.put<std::uint8_t>(c.preclean ? 1 : 0);
  w.put<std::uint8_t>(c.carry_learner_across_passes ? 1 : 0);
  w.put<std::int32_t>(c.alternations);
  w.put<std::int32_t>(c.workers);
}

template <typename E>
E read_enum(Reader& r, int count) {
  const std::uint64_t at = r.offset();
  const auto v = r.get<std::uint8_t>();
  if (v >= count) throw ParseError("checkpoint: invalid enum value", at);
  return static_cast<E>(v);
}

DenoiseConfig read_config(Reader& r) {
  DenoiseConfig c;
  c.n1 = r.get<std::int32_t>();
  c.n2 = r.get<std::int32_t>();
  c.m = r.get<std::int32_t>();
  c.stride = r.get<std::int32_t>();
  c.alpha0 = r.get<double>();
  c.lambda0 = r.get<double>();
  c.minibatch_size = r.get<std::int32_t>();
  const bool has_rho = r.get<std::uint8_t>() != 0;
  const double rho = r.get<double>();
  if (has_rho) c.rho = rho;
  const bool has_passes = r.get<std::uint8_t>() != 0;
  const int passes = r.get<std::int32_t>();
  if (has_passes) c.passes = passes;
  c.sigma = r.get<double>();
  c.h1 = r.get<std::int32_t>();
  c.h2 = r.get<std::int32_t>();
  c.mode = read_enum<Mode>(r, 3);
  c.leftover = read_enum<LeftoverPolicy>(r, 2);
  c.bm_source = read_enum<BmSource>(r, 2);
  c.weighting = read_enum<Weighting>(r, 3);
  c.seed = r.get<std::uint64_t>();
  c.preclean = r.get<std::uint8_t>() != 0;
  c.carry_learner_across_passes = r.get<std::uint8_t>() != 0;
  c.alternations = r.get<std::int32_t>();
  c.workers = r.get<std::int32_t>();
  return c;
}

}  // namespace

void save_learner(const LearnerState& state, std::ostream& out) {
  Writer w(out);
  write_learner(w, state);
  if (!out) throw IoError("save_learner: write failed");
}

LearnerState load_learner(std::istream& in) {
  Reader r(in);
  return read_learner(r);
}

struct CheckpointAccess {
  static void save(const StreamingDenoiser& e, std::ostream& out) {
    Writer w(out);
    w.bytes(kEngineMagic);
    w.put<std::uint32_t>(kVersion);
    write_config(w, e.config_);
    w.put<std::int32_t>(e.geometry_.frame_h);
    w.put<std::int32_t>(e.geometry_.frame_w);
    w.put<double>(e.pass_sigma_);
    w.put<std::uint64_t>(e.frames_pushed_);
    w.put<std::uint64_t>(e.frames_emitted_);
    w.put<std::uint64_t>(e.buffers_processed_);
    w.put<std::int32_t>(e.lead_in_pending_);
    w.put<std::uint8_t>(e.flushed_ ? 1 : 0);
    const auto frames = e.input_.frames();
    w.put<std::uint32_t>(static_cast<std::uint32_t>(frames.size()));
    for (const Plane& p : frames) w.plane(p);
    for (int d = 0; d < e.output_.depth(); ++d) w.plane(e.output_.values(d));
    for (int d = 0; d < e.output_.depth(); ++d) w.plane(e.output_.weights(d));
    write_learner(w, e.learner_);
    write_carry(w, e.scheduler_);
    const bool has_preclean = e.preclean_learner_.dim() > 0;
    w.put<std::uint8_t>(has_preclean ? 1 : 0);
    if (has_preclean) {
      write_learner(w, e.preclean_learner_);
      write_carry(w, e.preclean_scheduler_);
    }
    if (!out) throw IoError("checkpoint: write failed");
  }

  static StreamingDenoiser load(std::istream& in) {
    Reader r(in);
    r.expect(kEngineMagic);
    r.version();
    const DenoiseConfig config = read_config(r);
    const int h = r.get<std::int32_t>();
    const int w = r.get<std::int32_t>();
    const double pass_sigma = r.get<double>();
    StreamingDenoiser e;
    try {
      e = StreamingDenoiser(config, h, w, pass_sigma);
    } catch (const ConfigError& err) {
      throw ParseError(std::string("checkpoint: invalid configuration: ") +
                           err.what(),
                       r.offset());
    }
    e.frames_pushed_ = r.get<std::uint64_t>();
    e.frames_emitted_ = r.get<std::uint64_t>();
    e.buffers_processed_ = r.get<std::uint64_t>();
    e.lead_in_pending_ = r.get<std::int32_t>();
    e.flushed_ = r.get<std::uint8_t>() != 0;
    const std::uint64_t at = r.offset();
    const auto count = r.get<std::uint32_t>();
    if (count > static_cast<std::uint32_t>(config.m)) {
      throw ParseError("checkpoint: input buffer deeper than m", at);
    }
    for (std::uint32_t i = 0; i < count; ++i) e.input_.push(r.plane(h, w));
    for (int d = 0; d < config.m; ++d) e.output_.values(d) = r.plane(h, w);
    for (int d = 0; d < config.m; ++d) e.output_.weights(d) = r.plane(h, w);
    e.learner_ = read_learner(r);
    if (e.learner_.dim() != e.geometry_.patch_size()) {
      throw ParseError("checkpoint: learner size does not match patch size",
                       r.offset());
    }
    read_carry(r, e.scheduler_);
    if (r.get<std::uint8_t>() != 0) {
      if (e.preclean_learner_.dim() == 0) {
        throw ParseError("checkpoint: unexpected pre-clean state", r.offset());
      }
      e.preclean_learner_ = read_learner(r);
      read_carry(r, e.preclean_scheduler_);
    }
    return e;
  }
};

void StreamingDenoiser::save(std::ostream& out) const {
  CheckpointAccess::save(*this, out);
}

StreamingDenoiser StreamingDenoiser::load(std::istream& in) {
  return CheckpointAccess::load(in);
}

}  // namespace tlvd
