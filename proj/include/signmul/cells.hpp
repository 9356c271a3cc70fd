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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace signmul::cells {

// Source of a partial-product bit. Under uniformly distributed operand bits an
// AND term is 1 with probability 1/4 and a NAND term with probability 3/4.
enum class Polarity : std::uint8_t { PositiveAnd, NegativeNand, ConstantOne };

enum class CellId : std::uint8_t {
  Abc1Exact,
  Abc1Approx,
  Abcd1Exact,
  Abcd1Approx,
  Ac1,
  Ac2,
  Ac3,
  Ac4,
  Ac5,
  HalfAdder,
  FullAdder,
  Exact42,
};

/// A compressor or adder cell as an explicit truth table.
///
/// Rows are indexed by the input tuple read as a binary number with the first
/// input as the most significant bit, so row 0b100 of a three-input cell is
/// (a, b, c) = (1, 0, 0). Each output bit contributes `output_weights[k]`
/// relative to the cell's column: 1 for a sum, 2 for carry and cout.
struct CellTable {
  std::string name;
  int arity = 0;
  std::vector<Polarity> input_polarities;
  std::vector<std::string> input_names;
  bool has_const_one = false;
  bool exact = false;
  std::vector<std::string> output_names;
  std::vector<int> output_weights;
  std::vector<std::vector<std::uint8_t>> rows;

  unsigned row_count() const { return 1u << arity; }
  std::span<const std::uint8_t> outputs(unsigned row) const { return rows.at(row); }
  int exact_value(unsigned row) const;
  int approx_value(unsigned row) const;
  // exact - approximate, the sign convention of the mean-error model.
  int error(unsigned row) const { return exact_value(row) - approx_value(row); }
  int max_error_distance() const;
  bool sign_focused() const { return has_const_one; }
};

struct CompressorOut {
  bool cout = false;
  bool carry = false;
  bool sum = false;
  int value() const { return 2 * cout + 2 * carry + sum; }
  bool operator==(const CompressorOut&) const = default;
};

struct ApproxOut {
  bool carry = false;
  bool sum = false;
  int value() const { return 2 * carry + sum; }
  bool operator==(const ApproxOut&) const = default;
};

CompressorOut eval_exact_abc1(bool a, bool b, bool c);
CompressorOut eval_exact_abcd1(bool a, bool b, bool c, bool d);
// `a` is the NAND-generated input in both approximate cells.
ApproxOut eval_approx_abc1(bool a, bool b, bool c);
ApproxOut eval_approx_abcd1(bool a, bool b, bool c, bool d);

enum class Competitor : std::uint8_t { Ac1, Ac2, Ac3, Ac4, Ac5 };

// Throws std::invalid_argument naming the design when it is not ac1..ac5.
Competitor parse_competitor(std::string_view design);
// Approximate value (1..3) of a competitor A+B+C+1 cell.
int eval_competitor(Competitor design, bool a, bool b, bool c);
int eval_competitor(std::string_view design, bool a, bool b, bool c);

enum class StandardCell : std::uint8_t { HalfAdder, FullAdder, Exact42 };

// Exact cells used outside the sign-focused positions. Inputs are (a, b),
// (a, b, cin) and (x1, x2, x3, x4, cin); outputs are (carry, sum) for the
// adders and (cout, carry, sum) for the 4:2 compressor, whose cout does not
// depend on cin. Throws std::invalid_argument on an arity mismatch.
std::vector<bool> eval_standard(StandardCell cell, std::span<const bool> inputs);

const CellTable& table(CellId id);
std::string_view cell_name(CellId id);
std::optional<CellId> find_cell(std::string_view name);
std::span<const CellId> all_cells();
CellId competitor_cell(Competitor design);

}  // namespace signmul::cells
