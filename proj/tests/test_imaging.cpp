// Copyright 2026 The signmul Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gen.hpp"
#include "signmul/imaging.hpp"

#ifndef SIGNMUL_DATA_DIR
#error "SIGNMUL_DATA_DIR must point at the bundled data directory"
#endif

namespace {

using namespace signmul;
using namespace signmul::imaging;

std::int64_t plain_mul(std::int64_t a, std::int64_t b) { return a * b; }

GrayImage random_image(gen::Gen& g, int w, int h) {
  GrayImage img(w, h);
  img.pixels = g.bytes(img.pixels.size());
  return img;
}

// Convolution over an explicitly padded (w+2)x(h+2) array.
GrayImage padded_oracle(const GrayImage& img, const Kernel3x3& k) {
  const int pw = img.width + 2, ph = img.height + 2;
  std::vector<int> padded(static_cast<std::size_t>(pw * ph), 0);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) padded[(y + 1) * pw + (x + 1)] = img.at(x, y) / 2;
  }
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      long acc = 0;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) acc += static_cast<long>(k.k[r * 3 + c]) * padded[(y + r) * pw + (x + c)];
      }
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(2 * acc, 0L, 255L));
    }
  }
  return out;
}

TEST(Pgm, MinimalBinary) {
  const std::string bytes = std::string("P5\n2 1\n255\n") + '\x07' + '\xff';
  const auto img = load_pgm(bytes);
  EXPECT_EQ(img.width, 2);
  EXPECT_EQ(img.height, 1);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{7, 255}));
}

TEST(Pgm, BinaryRoundTripIsBitExact) {
  gen::Gen g(1);
  for (int k = 0; k < 50; ++k) {
    const auto img = random_image(g, static_cast<int>(g.integer(1, 40)), static_cast<int>(g.integer(1, 40)));
    const auto bytes = save_pgm(img);
    EXPECT_EQ(load_pgm(bytes), img);
    EXPECT_EQ(save_pgm(load_pgm(bytes)), bytes);
  }
}

TEST(Pgm, AsciiAndBinaryAgree) {
  gen::Gen g(2);
  for (int k = 0; k < 20; ++k) {
    const auto img = random_image(g, static_cast<int>(g.integer(1, 20)), static_cast<int>(g.integer(1, 20)));
    EXPECT_EQ(load_pgm(save_pgm_ascii(img)), load_pgm(save_pgm(img)));
  }
}

TEST(Pgm, HeaderCommentsAccepted) {
  const auto img = load_pgm("P2\n# made by hand\n2 2 # size\n255\n0 1\n# mid\n2 3\n");
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{0, 1, 2, 3}));
}

TEST(Pgm, MalformedInputsRejected) {
  EXPECT_THROW(load_pgm(""), FormatError);
  EXPECT_THROW(load_pgm("P6\n1 1\n255\n\x01"), FormatError);
  EXPECT_THROW(load_pgm("P5\n1 1\n65535\n\x01\x01"), FormatError);
  EXPECT_THROW(load_pgm("P5\n4 4\n255\n\x01\x02"), FormatError);
  EXPECT_THROW(load_pgm("P5\nx 4\n255\n"), FormatError);
  EXPECT_THROW(load_pgm("P5\n0 4\n255\n"), FormatError);
  EXPECT_THROW(load_pgm("P2\n2 1\n255\n1"), FormatError);
  EXPECT_THROW(load_pgm("P2\n2 1\n255\n1 300"), FormatError);
  EXPECT_THROW(load_pgm_file("/nonexistent/file.pgm"), FormatError);
  try {
    load_pgm("P5\n1 1\n15\n\x01");
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("maxval"), std::string::npos);
  }
}

TEST(Pgm, BundledImageLoads) {
  const auto img = load_pgm_file(std::string(SIGNMUL_DATA_DIR) + "/astronaut_256.pgm");
  EXPECT_EQ(img.width, 256);
  EXPECT_EQ(img.height, 256);
}

TEST(Convolve, ExactMultiplierMatchesPaddedOracle) {
  gen::Gen g(100);
  const auto& exact = mult::exact_multiplier(8);
  const MulFn mul = [&](std::int64_t a, std::int64_t b) { return exact.multiply(a, b); };
  for (int k = 0; k < 100; ++k) {
    const auto img = random_image(g, static_cast<int>(g.integer(1, 16)), static_cast<int>(g.integer(1, 16)));
    EXPECT_EQ(convolve3x3(img, Kernel3x3::laplacian(), mul), padded_oracle(img, Kernel3x3::laplacian()));
  }
}

TEST(Convolve, IdentityKernelReturnsInputUpToHalving) {
  gen::Gen g(5);
  const auto img = random_image(g, 13, 9);
  const auto out = convolve3x3(img, Kernel3x3::identity(), plain_mul);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) EXPECT_EQ(out.pixels[i], img.pixels[i] & ~1u);
  GrayImage even(8, 8);
  for (std::size_t i = 0; i < even.pixels.size(); ++i) even.pixels[i] = static_cast<std::uint8_t>(2 * i);
  EXPECT_EQ(convolve3x3(even, Kernel3x3::identity(), plain_mul), even);
}

TEST(Convolve, ConstantImageInteriorIsZero) {
  const GrayImage img(6, 5, 100);
  const auto out = convolve3x3(img, Kernel3x3::laplacian(), plain_mul);
  for (int y = 1; y < 4; ++y) {
    for (int x = 1; x < 5; ++x) EXPECT_EQ(out.at(x, y), 0);
  }
  // Zero padding leaves 3 (corner) or 5 (edge) taps inside the image.
  EXPECT_EQ(out.at(0, 0), std::min(255, 2 * 5 * 50));
  EXPECT_EQ(out.at(2, 0), std::min(255, 2 * 3 * 50));
  EXPECT_EQ(convolve3x3(GrayImage(4, 4, 0), Kernel3x3::laplacian(), plain_mul), GrayImage(4, 4, 0));
}

TEST(Convolve, ImpulseGivesLaplacianStamp) {
  GrayImage img(5, 5, 0);
  img.at(2, 2) = 200;
  const auto out = convolve3x3(img, Kernel3x3::laplacian(), plain_mul);
  EXPECT_EQ(out.at(2, 2), 255);  // 8 * 100 * 2 clamps
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) {
      if (x != 2 || y != 2) EXPECT_EQ(out.at(x, y), 0) << x << "," << y;  // -200 clamps
    }
  }
}

TEST(Convolve, OutputsClampedForEveryPreset) {
  gen::Gen g(8);
  const auto img = random_image(g, 16, 16);
  for (auto v : mult::preset_variants()) {
    const mult::Multiplier m(mult::preset(v));
    const auto out = convolve3x3(img, Kernel3x3::laplacian(), [&](auto a, auto b) { return m.multiply(a, b); });
    EXPECT_EQ(out.width, 16);
    EXPECT_EQ(out.pixels.size(), 256u);
  }
}

TEST(Convolve, IndependentOfThreadCount) {
  gen::Gen g(12);
  const auto img = random_image(g, 64, 48);
  const mult::Multiplier m(mult::preset(mult::Variant::Proposed));
  const MulFn mul = [&](std::int64_t a, std::int64_t b) { return m.multiply(a, b); };
  const auto one = convolve3x3(img, Kernel3x3::laplacian(), mul, 1);
  for (unsigned t : {2u, 8u}) EXPECT_EQ(convolve3x3(img, Kernel3x3::laplacian(), mul, t), one);
}

TEST(Kernel, CoefficientsMustFit) {
  EXPECT_NO_THROW(Kernel3x3::laplacian().check_fits(5));
  EXPECT_THROW(Kernel3x3::laplacian().check_fits(4), std::invalid_argument);
  Kernel3x3 big{{0, 0, 0, 0, 200, 0, 0, 0, 0}};
  EXPECT_THROW(big.check_fits(8), std::invalid_argument);
}

TEST(Psnr, Examples) {
  gen::Gen g(4);
  const auto img = random_image(g, 10, 10);
  EXPECT_TRUE(psnr(img, img).infinite);
  EXPECT_EQ(psnr(img, img).to_string(), "INF");
  GrayImage a(10, 10, 100), b(10, 10, 101);
  EXPECT_NEAR(psnr(a, b).db, 10 * std::log10(255.0 * 255.0), 1e-9);
  EXPECT_EQ(psnr(a, b).to_string(), "48.13");
  EXPECT_NEAR(psnr(GrayImage(3, 3, 0), GrayImage(3, 3, 255)).db, 0.0, 1e-12);
  EXPECT_THROW(psnr(GrayImage(3, 3), GrayImage(3, 4)), std::invalid_argument);
}

TEST(EdgeDetect, ExactIsInfiniteAndProposedFinite) {
  const auto img = load_pgm_file(std::string(SIGNMUL_DATA_DIR) + "/astronaut_256.pgm");
  const auto exact = edge_detect(img, mult::preset(mult::Variant::Exact));
  EXPECT_TRUE(exact.psnr_vs_exact.infinite);
  EXPECT_EQ(exact.edges, exact.reference);
  const auto prop = edge_detect(img, mult::preset(mult::Variant::Proposed));
  EXPECT_FALSE(prop.psnr_vs_exact.infinite);
  EXPECT_GT(prop.psnr_vs_exact.db, 0);
  EXPECT_EQ(prop.reference, exact.edges);
  EXPECT_THROW(edge_detect(img, mult::preset(mult::Variant::Exact, 6)), std::invalid_argument);
}

}  // namespace
