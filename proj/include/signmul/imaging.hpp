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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "signmul/errors.hpp"
#include "signmul/multiplier.hpp"

namespace signmul::imaging {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const GrayImage&) const = default;
};

struct Kernel3x3 {
  std::array<int, 9> k{};  // row-major, k[4] is the center tap

  static Kernel3x3 laplacian();
  static Kernel3x3 identity();
  // Throws std::invalid_argument if a coefficient does not fit a signed word.
  void check_fits(int width) const;
};

using MulFn = std::function<std::int64_t(std::int64_t, std::int64_t)>;

// Binary P5 or ASCII P2 with maxval 255. Throws FormatError.
GrayImage load_pgm(std::string_view bytes);
GrayImage load_pgm_file(const std::string& path);
std::string save_pgm(const GrayImage& img);        // P5
std::string save_pgm_ascii(const GrayImage& img);  // P2
void save_pgm_file(const GrayImage& img, const std::string& path);

// Zero-padded 3x3 convolution. Each tap multiplies (pixel >> 1) by the
// coefficient through mul; the accumulated sum is shifted left by one and
// clamped to [0, 255]. Rows are split across threads (0 = hardware count).
GrayImage convolve3x3(const GrayImage& img, const Kernel3x3& k, const MulFn& mul, unsigned threads = 0);

struct Psnr {
  bool infinite = false;
  double db = 0;

  std::string to_string() const;  // "INF" or two decimals
};

// Throws std::invalid_argument on a dimension mismatch.
Psnr psnr(const GrayImage& reference, const GrayImage& test);

struct EdgeResult {
  GrayImage edges;
  GrayImage reference;  // exact-multiplier edge map
  Psnr psnr_vs_exact;
};

// Laplacian edge map through the configured multiplier; cfg.width must be at
// least 8 so that halved pixels fit the operand.
EdgeResult edge_detect(const GrayImage& img, const mult::MultiplierConfig& cfg, unsigned threads = 0);

}  // namespace signmul::imaging
