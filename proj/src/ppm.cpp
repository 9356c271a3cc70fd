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

#include "signmul/ppm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace signmul::ppm {

using cells::Polarity;

namespace {

void check_width(int n) {
  if (n < kMinWidth || n > kMaxWidth) {
    throw std::invalid_argument("operand width " + std::to_string(n) + " outside supported range [" +
                                std::to_string(kMinWidth) + ", " + std::to_string(kMaxWidth) + "]");
  }
}

std::int64_t wrap_signed(std::int64_t v, int bits) {
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::uint64_t u = static_cast<std::uint64_t>(v) & mask;
  if (u >> (bits - 1)) return static_cast<std::int64_t>(u) - (std::int64_t{1} << bits);
  return static_cast<std::int64_t>(u);
}

std::string render(const PPBit& bit) {
  if (bit.is_constant()) return "1";
  std::string s = bit.polarity == Polarity::NegativeNand ? "~" : "";
  return s + "a" + std::to_string(bit.a_index) + "b" + std::to_string(bit.b_index);
}

}  // namespace

SignedWord::SignedWord(int width, std::int64_t value) : width_(width), value_(value) {
  check_width(width);
  if (value < min_value(width) || value > max_value(width)) {
    throw std::invalid_argument("value " + std::to_string(value) + " does not fit a signed " +
                                std::to_string(width) + "-bit word");
  }
}

bool PPBit::value(const SignedWord& a, const SignedWord& b) const {
  switch (polarity) {
    case Polarity::ConstantOne:
      return true;
    case Polarity::PositiveAnd:
      return a.bit(a_index) && b.bit(b_index);
    case Polarity::NegativeNand:
      return !(a.bit(a_index) && b.bit(b_index));
  }
  return false;
}

std::size_t PPMatrix::bit_count() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

std::size_t PPMatrix::product_bit_count() const {
  std::size_t n = 0;
  for (const auto& c : columns) {
    n += static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const PPBit& b) { return !b.is_constant(); }));
  }
  return n;
}

int PPMatrix::count(int column, Polarity polarity) const {
  const auto& c = columns.at(column);
  return static_cast<int>(std::count_if(c.begin(), c.end(), [&](const PPBit& b) { return b.polarity == polarity; }));
}

Region RegionMap::region_of(int column) const {
  if (std::find(lsp.begin(), lsp.end(), column) != lsp.end()) return Region::Lsp;
  if (std::find(csp.begin(), csp.end(), column) != csp.end()) return Region::Csp;
  if (std::find(msp.begin(), msp.end(), column) != msp.end()) return Region::Msp;
  throw std::out_of_range("column " + std::to_string(column) + " outside the matrix");
}

PPMatrix generate_bw(int n) {
  check_width(n);
  PPMatrix m;
  m.width = n;
  m.columns.resize(2 * n);
  // Row r holds the terms of a_i with i = N-1-r, matching the usual drawing
  // where the sign row sits on top.
  for (int i = n - 1; i >= 0; --i) {
    const int row = n - 1 - i;
    for (int j = 0; j < n; ++j) {
      const bool negative = (i == n - 1) != (j == n - 1);
      PPBit bit;
      bit.polarity = negative ? Polarity::NegativeNand : Polarity::PositiveAnd;
      bit.a_index = i;
      bit.b_index = j;
      bit.column = i + j;
      bit.row = row;
      m.columns[i + j].push_back(bit);
    }
  }
  const auto constant = [](int column, int row) {
    PPBit bit;
    bit.polarity = Polarity::ConstantOne;
    bit.origin = BitOrigin::BaughWooleyConstant;
    bit.column = column;
    bit.row = row;
    return bit;
  };
  m.columns[2 * n - 1].push_back(constant(2 * n - 1, 0));
  m.columns[n].push_back(constant(n, n - 1));
  return m;
}

std::int64_t evaluate(const PPMatrix& m, const SignedWord& a, const SignedWord& b) {
  if (a.width() != m.width || b.width() != m.width) {
    throw std::invalid_argument("operand widths (" + std::to_string(a.width()) + ", " + std::to_string(b.width()) +
                                ") do not match matrix width " + std::to_string(m.width));
  }
  std::int64_t sum = 0;
  for (const auto& column : m.columns) {
    for (const auto& bit : column) {
      if (bit.value(a, b)) sum += std::int64_t{1} << bit.column;
    }
  }
  return wrap_signed(sum, 2 * m.width);
}

RegionMap partition(int n) {
  check_width(n);
  RegionMap r;
  r.width = n;
  for (int c = 0; c < 2 * n; ++c) {
    if (c <= n - 2) {
      r.lsp.push_back(c);
    } else if (c <= n) {
      r.csp.push_back(c);
    } else {
      r.msp.push_back(c);
    }
  }
  return r;
}

PPMatrix apply_truncation(const PPMatrix& m, const RegionMap& regions) {
  PPMatrix out = m;
  for (int c : regions.lsp) out.columns.at(c).clear();
  return out;
}

Rational compensation_estimate(int n) {
  if (n < 2) throw std::invalid_argument("compensation estimate needs width >= 2");
  Rational total = 0;
  for (int q = 0; q <= n - 2; ++q) total += Rational(q + 1, 4) * (std::int64_t{1} << q);
  return total;
}

PPMatrix apply_compensation(const PPMatrix& m) {
  const int n = m.width;
  for (int c = 0; c <= n - 2; ++c) {
    if (!m.columns.at(c).empty()) {
      throw std::invalid_argument("compensation requires a truncated matrix; column " + std::to_string(c) +
                                  " still holds bits");
    }
  }
  PPMatrix out = m;
  auto& target = out.columns.at(n);
  auto nand = std::find_if(target.begin(), target.end(),
                           [](const PPBit& b) { return b.polarity == Polarity::NegativeNand; });
  if (nand == target.end()) {
    throw std::invalid_argument("column " + std::to_string(n) + " holds no NAND term to replace");
  }
  nand->polarity = Polarity::ConstantOne;
  nand->origin = BitOrigin::SubstitutedNand;
  nand->a_index = -1;
  nand->b_index = -1;

  const int row = n;  // extra display row below the product rows
  for (int c : {n - 1, n - 2}) {
    PPBit bit;
    bit.polarity = Polarity::ConstantOne;
    bit.origin = BitOrigin::CompensationConstant;
    bit.column = c;
    bit.row = row;
    out.columns.at(c).push_back(bit);
  }
  return out;
}

std::int64_t max_truncated_value(int n) {
  std::int64_t total = 0;
  for (int q = 0; q <= n - 2; ++q) total += (q + 1) * (std::int64_t{1} << q);
  return total;
}

std::int64_t compensation_constant(int n) { return (std::int64_t{1} << (n - 1)) + (std::int64_t{1} << (n - 2)); }

std::string dump(const PPMatrix& m) {
  int rows = 0;
  std::size_t cell_width = 1;
  for (const auto& column : m.columns) {
    for (const auto& bit : column) {
      rows = std::max(rows, bit.row + 1);
      cell_width = std::max(cell_width, render(bit).size());
    }
  }
  std::vector<std::vector<std::string>> grid(rows, std::vector<std::string>(m.columns.size(), "."));
  for (const auto& column : m.columns) {
    for (const auto& bit : column) grid[bit.row][bit.column] = render(bit);
  }
  std::ostringstream os;
  for (int c = static_cast<int>(m.columns.size()) - 1; c >= 0; --c) {
    std::string head = "2^" + std::to_string(c);
    os << std::string(cell_width + 1 - std::min(cell_width + 1, head.size()), ' ') << head;
  }
  os << '\n';
  for (const auto& line : grid) {
    for (int c = static_cast<int>(line.size()) - 1; c >= 0; --c) {
      os << std::string(cell_width + 1 - line[c].size(), ' ') << line[c];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace signmul::ppm
