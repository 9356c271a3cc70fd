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

#include "signmul/cells.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace signmul::cells {

namespace {

using Row = std::vector<std::uint8_t>;

// Exact A+B+C+D+1 outputs (cout, carry, sum), rows ordered A B C D.
constexpr std::array<std::array<std::uint8_t, 3>, 16> kAbcd1Exact = {{
    {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 1, 1},
    {0, 1, 0}, {0, 1, 1}, {0, 1, 1}, {1, 1, 0},
    {1, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0},
    {0, 1, 1}, {1, 1, 0}, {1, 1, 0}, {1, 1, 1},
}};

// Approximate A+B+C+D+1 outputs (carry, sum); cout is not produced.
constexpr std::array<std::array<std::uint8_t, 2>, 16> kAbcd1Approx = {{
    {0, 1}, {1, 0}, {1, 0}, {1, 0},
    {1, 0}, {1, 1}, {1, 1}, {1, 1},
    {1, 0}, {1, 1}, {1, 1}, {1, 1},
    {1, 1}, {1, 1}, {1, 1}, {1, 1},
}};

// Approximate A+B+C+1 outputs (carry, sum).
constexpr std::array<std::array<std::uint8_t, 2>, 8> kAbc1Approx = {{
    {0, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 0}, {1, 1}, {1, 1}, {1, 1},
}};

// Approximate values of the competitor A+B+C+1 cells, rows ordered A B C.
constexpr std::array<std::array<std::uint8_t, 8>, 5> kCompetitorValues = {{
    {1, 2, 2, 2, 2, 2, 2, 2},  // ac1
    {1, 1, 1, 3, 2, 3, 3, 2},  // ac2
    {1, 2, 2, 3, 1, 2, 2, 3},  // ac3
    {3, 3, 3, 3, 2, 3, 3, 2},  // ac4
    {2, 2, 2, 2, 2, 3, 3, 3},  // ac5
}};

constexpr std::array<std::string_view, 12> kNames = {
    "abc1-exact", "abc1-approx", "abcd1-exact", "abcd1-approx",
    "ac1",        "ac2",         "ac3",         "ac4",
    "ac5",        "half-adder",  "full-adder",  "exact-42",
};

constexpr std::array<CellId, 12> kAllCells = {
    CellId::Abc1Exact, CellId::Abc1Approx, CellId::Abcd1Exact, CellId::Abcd1Approx,
    CellId::Ac1,       CellId::Ac2,        CellId::Ac3,        CellId::Ac4,
    CellId::Ac5,       CellId::HalfAdder,  CellId::FullAdder,  CellId::Exact42,
};

bool bit_of(unsigned row, int arity, int position) {
  return (row >> (arity - 1 - position)) & 1u;
}

Row canonical_abc1(unsigned row) {
  const int total = std::popcount(row) + 1;
  return {static_cast<std::uint8_t>(total == 4), static_cast<std::uint8_t>(total >= 2),
          static_cast<std::uint8_t>(total & 1)};
}

Row exact42(unsigned row) {
  const bool x1 = bit_of(row, 5, 0), x2 = bit_of(row, 5, 1), x3 = bit_of(row, 5, 2);
  const bool x4 = bit_of(row, 5, 3), cin = bit_of(row, 5, 4);
  const bool cout = (x1 && x2) || (x1 && x3) || (x2 && x3);
  const bool s1 = x1 ^ x2 ^ x3;
  const bool sum = s1 ^ x4 ^ cin;
  const bool carry = (s1 && x4) || (s1 && cin) || (x4 && cin);
  return {cout, carry, sum};
}

CellTable make_sign_focused(std::string name, int arity, bool exact, bool with_cout) {
  CellTable t;
  t.name = std::move(name);
  t.arity = arity;
  t.has_const_one = true;
  t.exact = exact;
  t.input_polarities.assign(arity, Polarity::PositiveAnd);
  t.input_polarities[0] = Polarity::NegativeNand;
  static constexpr std::array<const char*, 4> kLetters = {"A", "B", "C", "D"};
  for (int k = 0; k < arity; ++k) t.input_names.emplace_back(kLetters[k]);
  if (with_cout) {
    t.output_names = {"cout", "carry", "sum"};
    t.output_weights = {2, 2, 1};
  } else {
    t.output_names = {"carry", "sum"};
    t.output_weights = {2, 1};
  }
  return t;
}

CellTable build(CellId id) {
  switch (id) {
    case CellId::Abc1Exact: {
      auto t = make_sign_focused("abc1-exact", 3, true, true);
      for (unsigned r = 0; r < 8; ++r) t.rows.push_back(canonical_abc1(r));
      return t;
    }
    case CellId::Abc1Approx: {
      auto t = make_sign_focused("abc1-approx", 3, false, false);
      for (const auto& r : kAbc1Approx) t.rows.emplace_back(r.begin(), r.end());
      return t;
    }
    case CellId::Abcd1Exact: {
      auto t = make_sign_focused("abcd1-exact", 4, true, true);
      for (const auto& r : kAbcd1Exact) t.rows.emplace_back(r.begin(), r.end());
      return t;
    }
    case CellId::Abcd1Approx: {
      auto t = make_sign_focused("abcd1-approx", 4, false, false);
      for (const auto& r : kAbcd1Approx) t.rows.emplace_back(r.begin(), r.end());
      return t;
    }
    case CellId::Ac1:
    case CellId::Ac2:
    case CellId::Ac3:
    case CellId::Ac4:
    case CellId::Ac5: {
      const auto k = static_cast<std::size_t>(id) - static_cast<std::size_t>(CellId::Ac1);
      auto t = make_sign_focused(std::string(kNames[static_cast<std::size_t>(id)]), 3, false, false);
      // Value-only lookup, split into two bits for placement in a reduction tree.
      for (auto v : kCompetitorValues[k]) t.rows.push_back({static_cast<std::uint8_t>(v / 2), static_cast<std::uint8_t>(v % 2)});
      return t;
    }
    case CellId::HalfAdder:
    case CellId::FullAdder: {
      CellTable t;
      const bool full = id == CellId::FullAdder;
      t.name = full ? "full-adder" : "half-adder";
      t.arity = full ? 3 : 2;
      t.exact = true;
      t.input_polarities.assign(t.arity, Polarity::PositiveAnd);
      t.input_names = full ? std::vector<std::string>{"a", "b", "cin"} : std::vector<std::string>{"a", "b"};
      t.output_names = {"carry", "sum"};
      t.output_weights = {2, 1};
      for (unsigned r = 0; r < t.row_count(); ++r) {
        const int total = std::popcount(r);
        t.rows.push_back({static_cast<std::uint8_t>(total >> 1), static_cast<std::uint8_t>(total & 1)});
      }
      return t;
    }
    case CellId::Exact42: {
      CellTable t;
      t.name = "exact-42";
      t.arity = 5;
      t.exact = true;
      t.input_polarities.assign(5, Polarity::PositiveAnd);
      t.input_names = {"x1", "x2", "x3", "x4", "cin"};
      t.output_names = {"cout", "carry", "sum"};
      t.output_weights = {2, 2, 1};
      for (unsigned r = 0; r < 32; ++r) t.rows.push_back(exact42(r));
      return t;
    }
  }
  throw std::logic_error("unhandled cell id");
}

const std::array<CellTable, 12>& registry() {
  static const std::array<CellTable, 12> tables = [] {
    std::array<CellTable, 12> out;
    for (std::size_t k = 0; k < kAllCells.size(); ++k) out[k] = build(kAllCells[k]);
    return out;
  }();
  return tables;
}

unsigned pack(std::initializer_list<bool> bits) {
  unsigned row = 0;
  for (bool b : bits) row = (row << 1) | (b ? 1u : 0u);
  return row;
}

}  // namespace

int CellTable::exact_value(unsigned row) const {
  return std::popcount(row) + (has_const_one ? 1 : 0);
}

int CellTable::approx_value(unsigned row) const {
  const auto& out = rows.at(row);
  int v = 0;
  for (std::size_t k = 0; k < out.size(); ++k) v += out[k] * output_weights[k];
  return v;
}

int CellTable::max_error_distance() const {
  int worst = 0;
  for (unsigned r = 0; r < row_count(); ++r) worst = std::max(worst, std::abs(error(r)));
  return worst;
}

CompressorOut eval_exact_abc1(bool a, bool b, bool c) {
  const auto& o = table(CellId::Abc1Exact).outputs(pack({a, b, c}));
  return {o[0] != 0, o[1] != 0, o[2] != 0};
}

CompressorOut eval_exact_abcd1(bool a, bool b, bool c, bool d) {
  const auto& o = table(CellId::Abcd1Exact).outputs(pack({a, b, c, d}));
  return {o[0] != 0, o[1] != 0, o[2] != 0};
}

ApproxOut eval_approx_abc1(bool a, bool b, bool c) {
  const auto& o = table(CellId::Abc1Approx).outputs(pack({a, b, c}));
  return {o[0] != 0, o[1] != 0};
}

ApproxOut eval_approx_abcd1(bool a, bool b, bool c, bool d) {
  const auto& o = table(CellId::Abcd1Approx).outputs(pack({a, b, c, d}));
  return {o[0] != 0, o[1] != 0};
}

Competitor parse_competitor(std::string_view design) {
  static constexpr std::array<std::string_view, 5> kCompetitors = {"ac1", "ac2", "ac3", "ac4", "ac5"};
  for (std::size_t k = 0; k < kCompetitors.size(); ++k) {
    if (design == kCompetitors[k]) return static_cast<Competitor>(k);
  }
  throw std::invalid_argument("unknown competitor design '" + std::string(design) +
                              "' (expected one of ac1, ac2, ac3, ac4, ac5)");
}

int eval_competitor(Competitor design, bool a, bool b, bool c) {
  return kCompetitorValues.at(static_cast<std::size_t>(design))[pack({a, b, c})];
}

int eval_competitor(std::string_view design, bool a, bool b, bool c) {
  return eval_competitor(parse_competitor(design), a, b, c);
}

std::vector<bool> eval_standard(StandardCell cell, std::span<const bool> inputs) {
  static constexpr std::array<std::size_t, 3> kArity = {2, 3, 5};
  static constexpr std::array<CellId, 3> kIds = {CellId::HalfAdder, CellId::FullAdder, CellId::Exact42};
  const auto k = static_cast<std::size_t>(cell);
  if (inputs.size() != kArity[k]) {
    throw std::invalid_argument(std::string(kNames[static_cast<std::size_t>(kIds[k])]) + " expects " +
                                std::to_string(kArity[k]) + " inputs, got " + std::to_string(inputs.size()));
  }
  unsigned row = 0;
  for (bool b : inputs) row = (row << 1) | (b ? 1u : 0u);
  const auto& o = table(kIds[k]).outputs(row);
  return {o.begin(), o.end()};
}

const CellTable& table(CellId id) { return registry()[static_cast<std::size_t>(id)]; }

std::string_view cell_name(CellId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<CellId> find_cell(std::string_view name) {
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == name) return kAllCells[k];
  }
  return std::nullopt;
}

std::span<const CellId> all_cells() { return kAllCells; }

CellId competitor_cell(Competitor design) {
  return static_cast<CellId>(static_cast<std::size_t>(CellId::Ac1) + static_cast<std::size_t>(design));
}

}  // namespace signmul::cells
