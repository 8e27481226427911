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

#include <fstream>
#include <random>

#include "test_helpers.hpp"
#include "tlvd/errors.hpp"
#include "tlvd/video_io.hpp"

namespace tlvd {
namespace {

using testing::TempDir;

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<Plane> integer_clip(int h, int w, int frames, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<Plane> out;
  for (int t = 0; t < frames; ++t) {
    Plane p(h, w);
    for (double& v : p.pixels()) v = dist(rng);
    out.push_back(std::move(p));
  }
  return out;
}

TEST(Y4m, HandBuiltMonoFixture) {
  TempDir dir;
  std::string bytes = "YUV4MPEG2 W4 H4 F30:1 Ip A1:1 Cmono\n";
  for (int f = 0; f < 2; ++f) {
    bytes += "FRAME\n";
    for (int i = 0; i < 16; ++i) bytes.push_back(static_cast<char>(f * 100 + i));
  }
  write_bytes(dir / "a.y4m", bytes);
  const Video v = read_video(dir / "a.y4m", VideoFormat::kY4m);
  ASSERT_EQ(v.frame_count(), 2u);
  EXPECT_EQ(v.width, 4);
  EXPECT_EQ(v.height, 4);
  EXPECT_EQ(v.rate_num, 30);
  EXPECT_EQ(v.frames[0](0, 0), 0.0);
  EXPECT_EQ(v.frames[0](1, 2), 6.0);
  EXPECT_EQ(v.frames[1](3, 3), 115.0);
}

TEST(Y4m, ChromaPlanesSkipped) {
  TempDir dir;
  std::string bytes = "YUV4MPEG2 W3 H3 C420jpeg\n";
  for (int f = 0; f < 2; ++f) {
    bytes += "FRAME\n";
    bytes += std::string(9, static_cast<char>(10 + f));
    bytes += std::string(2 * 2 * 2, static_cast<char>(200));
  }
  write_bytes(dir / "c.y4m", bytes);
  const Video v = read_video(dir / "c.y4m", VideoFormat::kY4m);
  ASSERT_EQ(v.frame_count(), 2u);
  EXPECT_EQ(v.frames[1](2, 2), 11.0);
}

TEST(Y4m, ErrorsCarryByteOffsets) {
  TempDir dir;
  write_bytes(dir / "cs.y4m", "YUV4MPEG2 W2 H2 C444\nFRAME\n");
  EXPECT_THROW(read_video(dir / "cs.y4m", VideoFormat::kY4m), ParseError);
  write_bytes(dir / "sig.y4m", "MPEG W2 H2\n");
  EXPECT_THROW(read_video(dir / "sig.y4m", VideoFormat::kY4m), ParseError);

  write_bytes(dir / "trunc.y4m", "YUV4MPEG2 W2 H2 Cmono\nFRAME\nab");
  try {
    read_video(dir / "trunc.y4m", VideoFormat::kY4m);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.byte_offset(), 28u);
  }
  write_bytes(dir / "marker.y4m", "YUV4MPEG2 W1 H1 Cmono\nFRAME\naFRAMX\nb");
  try {
    read_video(dir / "marker.y4m", VideoFormat::kY4m);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.byte_offset(), 29u);
  }
  write_bytes(dir / "w.y4m", "YUV4MPEG2 Wx H2\n");
  EXPECT_THROW(read_video(dir / "w.y4m", VideoFormat::kY4m), ParseError);
}

TEST(VideoIo, MissingFileIsIoError) {
  EXPECT_THROW(read_video("/nonexistent/tlvd.y4m", VideoFormat::kY4m), IoError);
  EXPECT_THROW(read_video("/nonexistent/f%03d.pgm", VideoFormat::kPgmSequence),
               IoError);
}

TEST(VideoIo, RoundTripAllFormats) {
  TempDir dir;
  const Video v = Video::from_frames(integer_clip(5, 7, 3, 1));
  write_video(v, dir / "v.y4m", VideoFormat::kY4m);
  EXPECT_EQ(read_video(dir / "v.y4m", VideoFormat::kY4m).frames, v.frames);

  write_video(v, dir / "f%02d.pgm", VideoFormat::kPgmSequence);
  EXPECT_TRUE(std::filesystem::exists(dir / "f00.pgm"));
  EXPECT_EQ(read_video(dir / "f%02d.pgm", VideoFormat::kPgmSequence).frames,
            v.frames);

  write_video(v, dir / "v.raw", VideoFormat::kRawGray);
  EXPECT_EQ(read_video(dir / "v.raw", VideoFormat::kRawGray, RawDims{7, 5}).frames,
            v.frames);
}

TEST(VideoIo, WriteClampsAndRounds) {
  EXPECT_EQ(to_8bit(300.0), 255);
  EXPECT_EQ(to_8bit(-4.0), 0);
  EXPECT_EQ(to_8bit(127.5), 128);
  EXPECT_EQ(to_8bit(127.49), 127);
  EXPECT_EQ(to_8bit(std::nan("")), 0);
  TempDir dir;
  Plane p(1, 3);
  p(0, 0) = 300.0;
  p(0, 1) = 127.5;
  p(0, 2) = -1.0;
  write_video(Video::from_frames({p}), dir / "c.raw", VideoFormat::kRawGray);
  EXPECT_EQ(read_bytes(dir / "c.raw"), std::string("\xff\x80\x00", 3));
}

TEST(Pgm, SequenceStartsAtOneWhenZeroMissing) {
  TempDir dir;
  const auto clip = integer_clip(2, 2, 2, 2);
  std::string a = "P5\n# comment\n2 2\n255\n";
  std::string b = a;
  for (double v : clip[0].pixels()) a.push_back(static_cast<char>(v));
  for (double v : clip[1].pixels()) b.push_back(static_cast<char>(v));
  write_bytes(dir / "img1.pgm", a);
  write_bytes(dir / "img2.pgm", b);
  const Video v = read_video(dir / "img%d.pgm", VideoFormat::kPgmSequence);
  EXPECT_EQ(v.frames, clip);
}

TEST(Pgm, RejectsUnsupported) {
  TempDir dir;
  write_bytes(dir / "p0.pgm", "P2\n2 2\n255\n0 0 0 0\n");
  EXPECT_THROW(read_video(dir / "p%d.pgm", VideoFormat::kPgmSequence),
               ParseError);
  write_bytes(dir / "q0.pgm", "P5\n2 2\n65535\n");
  EXPECT_THROW(read_video(dir / "q%d.pgm", VideoFormat::kPgmSequence),
               ParseError);
  write_bytes(dir / "r0.pgm", std::string("P5\n2 2\n255\n\x01", 12));
  EXPECT_THROW(read_video(dir / "r%d.pgm", VideoFormat::kPgmSequence),
               ParseError);
  EXPECT_THROW(read_video(dir / "nopattern.pgm", VideoFormat::kPgmSequence),
               IoError);
  EXPECT_THROW(read_video(dir / "two%d_%d.pgm", VideoFormat::kPgmSequence),
               IoError);
}

TEST(Pgm, MixedDimensionsRejected) {
  TempDir dir;
  write_bytes(dir / "m0.pgm", std::string("P5 1 1 255\n\x05", 12));
  write_bytes(dir / "m1.pgm", std::string("P5 2 1 255\n\x05\x06", 13));
  EXPECT_THROW(read_video(dir / "m%d.pgm", VideoFormat::kPgmSequence),
               ShapeError);
}

TEST(Raw, RequiresDimensionsAndWholeFrames) {
  TempDir dir;
  write_bytes(dir / "r.raw", std::string(10, '\0'));
  EXPECT_THROW(read_video(dir / "r.raw", VideoFormat::kRawGray), IoError);
  EXPECT_THROW(read_video(dir / "r.raw", VideoFormat::kRawGray, RawDims{2, 2}),
               ParseError);
  EXPECT_EQ(read_video(dir / "r.raw", VideoFormat::kRawGray, RawDims{5, 1})
                .frame_count(),
            2u);
}

TEST(VideoIo, FormatNames) {
  EXPECT_EQ(parse_video_format("y4m"), VideoFormat::kY4m);
  EXPECT_EQ(parse_video_format("pgm"), VideoFormat::kPgmSequence);
  EXPECT_EQ(parse_video_format("raw-gray"), VideoFormat::kRawGray);
  EXPECT_THROW(parse_video_format("mp4"), ConfigError);
  EXPECT_EQ(guess_video_format("a/b.y4m"), VideoFormat::kY4m);
  EXPECT_EQ(guess_video_format("f%03d.pgm"), VideoFormat::kPgmSequence);
  EXPECT_EQ(guess_video_format("clip.gray"), VideoFormat::kRawGray);
  for (auto f : {VideoFormat::kY4m, VideoFormat::kPgmSequence,
                 VideoFormat::kRawGray}) {
    EXPECT_EQ(parse_video_format(to_string(f)), f);
  }
}

TEST(VideoIo, WritingEmptyOrRaggedVideoFails) {
  TempDir dir;
  EXPECT_THROW(write_video(Video{}, dir / "e.y4m", VideoFormat::kY4m),
               ShapeError);
  const Video ragged = Video::from_frames({Plane(2, 2), Plane(3, 2)});
  EXPECT_THROW(write_video(ragged, dir / "r.y4m", VideoFormat::kY4m),
               ShapeError);
}

}  // namespace
}  // namespace tlvd
