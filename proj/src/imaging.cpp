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

#include "signmul/imaging.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace signmul::imaging {

namespace {

constexpr int kMinEdgeWidth = 8;

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : s_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000) throw FormatError(std::string("PGM ") + what + " is too large");
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= s_.size()) throw FormatError(std::string("PGM data ends before ") + what);
      throw FormatError(std::string("PGM ") + what + " is not a number");
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= s_.size(); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::uint8_t clamp_pixel(std::int64_t v) { return static_cast<std::uint8_t>(std::clamp<std::int64_t>(v, 0, 255)); }

}  // namespace

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
}

Kernel3x3 Kernel3x3::laplacian() { return {{-1, -1, -1, -1, 8, -1, -1, -1, -1}}; }

Kernel3x3 Kernel3x3::identity() { return {{0, 0, 0, 0, 1, 0, 0, 0, 0}}; }

void Kernel3x3::check_fits(int width) const {
  for (int c : k) {
    if (c < ppm::SignedWord::min_value(width) || c > ppm::SignedWord::max_value(width)) {
      throw std::invalid_argument("kernel coefficient " + std::to_string(c) + " does not fit a " +
                                  std::to_string(width) + "-bit operand");
    }
  }
}

GrayImage load_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw FormatError("not a PGM file: expected magic P5 or P2");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader r(bytes);
  r.advance(2);
  if (!r.at_end() && !std::isspace(static_cast<unsigned char>(bytes[r.pos()])) && bytes[r.pos()] != '#') {
    throw FormatError("malformed PGM magic");
  }
  const long w = r.number("width");
  const long h = r.number("height");
  const long maxval = r.number("maxval");
  if (w <= 0 || h <= 0) throw FormatError("PGM dimensions must be positive");
  if (maxval != 255) throw FormatError("unsupported PGM maxval " + std::to_string(maxval) + " (expected 255)");

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  const std::size_t count = img.pixels.size();
  if (binary) {
    if (r.at_end() || !std::isspace(static_cast<unsigned char>(bytes[r.pos()]))) {
      throw FormatError("PGM header must end with a single whitespace byte");
    }
    r.advance(1);
    if (bytes.size() - r.pos() < count) {
      throw FormatError("truncated PGM payload: expected " + std::to_string(count) + " bytes, found " +
                        std::to_string(bytes.size() - r.pos()));
    }
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos()), count, img.pixels.begin());
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      if ((r.skip_space_and_comments(), r.at_end())) {
        throw FormatError("truncated PGM payload: expected " + std::to_string(count) + " samples, found " +
                          std::to_string(k));
      }
      const long v = r.number("sample");
      if (v > 255) throw FormatError("PGM sample " + std::to_string(v) + " exceeds maxval");
      img.pixels[k] = static_cast<std::uint8_t>(v);
    }
  }
  return img;
}

GrayImage load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_pgm(buf.str());
}

std::string save_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

std::string save_pgm_ascii(const GrayImage& img) {
  std::ostringstream os;
  os << "P2\n" << img.width << ' ' << img.height << "\n255\n";
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) os << (x ? " " : "") << static_cast<int>(img.at(x, y));
    os << '\n';
  }
  return os.str();
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  const std::string bytes = save_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write to '" + path + "' failed");
}

GrayImage convolve3x3(const GrayImage& img, const Kernel3x3& k, const MulFn& mul, unsigned threads) {
  if (img.pixels.empty()) throw std::invalid_argument("cannot convolve an empty image");
  GrayImage out(img.width, img.height);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int y = next++; y < img.height; y = next++) {
      for (int x = 0; x < img.width; ++x) {
        std::int64_t acc = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int c = k.k[(dy + 1) * 3 + (dx + 1)];
            const int sx = x + dx;
            const int sy = y + dy;
            const bool inside = sx >= 0 && sy >= 0 && sx < img.width && sy < img.height;
            const std::int64_t p = inside ? img.at(sx, sy) >> 1 : 0;
            acc += mul(p, c);
          }
        }
        out.at(x, y) = clamp_pixel(acc * 2);
      }
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(img.height));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

std::string Psnr::to_string() const {
  if (infinite) return "INF";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << db;
  return os.str();
}

Psnr psnr(const GrayImage& reference, const GrayImage& test) {
  if (reference.width != test.width || reference.height != test.height) {
    throw std::invalid_argument("PSNR needs equal dimensions: " + std::to_string(reference.width) + "x" +
                                std::to_string(reference.height) + " vs " + std::to_string(test.width) + "x" +
                                std::to_string(test.height));
  }
  std::uint64_t sq = 0;
  for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
    const int d = static_cast<int>(reference.pixels[i]) - static_cast<int>(test.pixels[i]);
    sq += static_cast<std::uint64_t>(d * d);
  }
  if (sq == 0) return {true, 0};
  const double mse = static_cast<double>(sq) / static_cast<double>(reference.pixels.size());
  return {false, 10.0 * std::log10(255.0 * 255.0 / mse)};
}

EdgeResult edge_detect(const GrayImage& img, const mult::MultiplierConfig& cfg, unsigned threads) {
  if (cfg.width < kMinEdgeWidth) {
    throw std::invalid_argument("edge detection needs a multiplier of width >= " + std::to_string(kMinEdgeWidth));
  }
  const auto kernel = Kernel3x3::laplacian();
  kernel.check_fits(cfg.width);
  const mult::Multiplier approx(cfg);
  const mult::Multiplier& exact = mult::exact_multiplier(cfg.width);
  EdgeResult r;
  r.edges = convolve3x3(img, kernel, [&](std::int64_t a, std::int64_t b) { return approx.multiply(a, b); }, threads);
  r.reference = convolve3x3(img, kernel, [&](std::int64_t a, std::int64_t b) { return exact.multiply(a, b); }, threads);
  r.psnr_vs_exact = psnr(r.reference, r.edges);
  return r;
}

}  // namespace signmul::imaging
