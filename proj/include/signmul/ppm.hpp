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

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "signmul/cells.hpp"

namespace signmul::ppm {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kMinWidth = 4;
inline constexpr int kMaxWidth = 16;

/// An N-bit two's-complement operand.
class SignedWord {
 public:
  // Throws std::invalid_argument if the width is outside [4, 16] or the value
  // does not fit.
  SignedWord(int width, std::int64_t value);

  int width() const { return width_; }
  std::int64_t value() const { return value_; }
  bool bit(int k) const { return (static_cast<std::uint64_t>(value_) >> k) & 1u; }

  static std::int64_t min_value(int width) { return -(std::int64_t{1} << (width - 1)); }
  static std::int64_t max_value(int width) { return (std::int64_t{1} << (width - 1)) - 1; }

 private:
  int width_;
  std::int64_t value_;
};

enum class BitOrigin : std::uint8_t {
  Product,              // a_i b_j, possibly complemented
  BaughWooleyConstant,  // the constant ones at 2^N and 2^(2N-1)
  CompensationConstant,
  SubstitutedNand,      // a NAND term replaced by a constant one
};

struct PPBit {
  cells::Polarity polarity = cells::Polarity::PositiveAnd;
  BitOrigin origin = BitOrigin::Product;
  int a_index = -1;  // -1 for constants
  int b_index = -1;
  int column = 0;
  int row = 0;  // display row in the symbolic dump

  bool is_constant() const { return polarity == cells::Polarity::ConstantOne; }
  bool value(const SignedWord& a, const SignedWord& b) const;
};

struct PPMatrix {
  int width = 0;
  std::vector<std::vector<PPBit>> columns;  // 2N columns, index = weight exponent

  std::size_t bit_count() const;
  std::size_t product_bit_count() const;
  std::size_t height(int column) const { return columns.at(column).size(); }
  int count(int column, cells::Polarity polarity) const;
};

enum class Region : std::uint8_t { Lsp, Csp, Msp };

struct RegionMap {
  int width = 0;
  std::vector<int> lsp;
  std::vector<int> csp;
  std::vector<int> msp;

  Region region_of(int column) const;
};

PPMatrix generate_bw(int n);

// Sum of every bit times its column weight, wrapped to 2N bits and read back as
// a signed value. Throws std::invalid_argument on a width mismatch.
std::int64_t evaluate(const PPMatrix& m, const SignedWord& a, const SignedWord& b);

RegionMap partition(int n);

PPMatrix apply_truncation(const PPMatrix& m, const RegionMap& regions);

// Expected value of the truncated bits under independent uniform operand bits.
Rational compensation_estimate(int n);

// Adds constant ones at 2^(N-1) and 2^(N-2) and swaps one NAND term of the 2^N
// column for a constant one. The input must already be truncated.
PPMatrix apply_compensation(const PPMatrix& m);

// Largest value the truncated columns can hold: sum over q <= N-2 of (q+1) 2^q.
std::int64_t max_truncated_value(int n);
// Value of the constants added by apply_compensation: 2^(N-1) + 2^(N-2).
std::int64_t compensation_constant(int n);

// Text grid, one line per partial-product row, most significant column first.
// Cells are rendered as a{i}b{j}, ~a{i}b{j} or 1, empty positions as '.'.
std::string dump(const PPMatrix& m);

}  // namespace signmul::ppm
