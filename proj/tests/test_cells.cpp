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

#include <bit>

#include "golden.hpp"
#include "signmul/cells.hpp"

namespace {

using namespace signmul::cells;

bool bit(unsigned row, int arity, int k) { return (row >> (arity - 1 - k)) & 1u; }

TEST(ExactAbc1, Examples) {
  EXPECT_EQ(eval_exact_abc1(false, false, false), (CompressorOut{false, false, true}));
  EXPECT_EQ(eval_exact_abc1(true, true, true), (CompressorOut{true, true, false}));
  EXPECT_EQ(eval_exact_abc1(true, false, true), (CompressorOut{false, true, true}));
}

TEST(ExactAbc1, CanonicalEncodingOnEveryRow) {
  for (unsigned r = 0; r < 8; ++r) {
    const int total = std::popcount(r) + 1;
    const auto o = eval_exact_abc1(bit(r, 3, 0), bit(r, 3, 1), bit(r, 3, 2));
    EXPECT_EQ(o.sum, total % 2 == 1);
    EXPECT_EQ(o.carry, total >= 2);
    EXPECT_EQ(o.cout, total == 4);
    EXPECT_EQ(o.value(), total);
  }
}

TEST(ExactAbcd1, Examples) {
  EXPECT_EQ(eval_exact_abcd1(true, false, true, true), (CompressorOut{true, true, false}));
  EXPECT_EQ(eval_exact_abcd1(false, false, false, false), (CompressorOut{false, false, true}));
  EXPECT_EQ(eval_exact_abcd1(true, true, true, true), (CompressorOut{true, true, true}));
}

TEST(ExactAbcd1, MatchesPublishedRows) {
  for (unsigned r = 0; r < 16; ++r) {
    const auto& g = golden::kAbcd1[r];
    const auto o = eval_exact_abcd1(bit(r, 4, 0), bit(r, 4, 1), bit(r, 4, 2), bit(r, 4, 3));
    EXPECT_EQ(o, (CompressorOut{g.cout == 1, g.carry == 1, g.sum == 1})) << "row " << r;
  }
}

TEST(ExactAbcd1, LookupDistinguishesEqualValues) {
  EXPECT_EQ(eval_exact_abcd1(false, false, false, true), (CompressorOut{true, false, false}));
  EXPECT_EQ(eval_exact_abcd1(false, false, true, false), (CompressorOut{false, true, false}));
}

TEST(ApproxAbc1, Examples) {
  EXPECT_EQ(eval_approx_abc1(false, false, false), (ApproxOut{false, true}));
  EXPECT_EQ(eval_approx_abc1(true, false, false), (ApproxOut{true, false}));
  EXPECT_EQ(eval_approx_abc1(true, true, true), (ApproxOut{true, true}));
}

TEST(ApproxAbc1, MatchesPublishedRowsAndLogicForm) {
  for (unsigned r = 0; r < 8; ++r) {
    const bool a = bit(r, 3, 0), b = bit(r, 3, 1), c = bit(r, 3, 2);
    const auto o = eval_approx_abc1(a, b, c);
    const auto& g = golden::kAbc1[r];
    EXPECT_EQ(o, (ApproxOut{g.carry == 1, g.sum == 1})) << "row " << r;
    EXPECT_EQ(o.value(), g.proposed);
    EXPECT_EQ(o.carry, a || b || c);
    EXPECT_EQ(o.sum, !(a && !b && !c));
  }
}

TEST(ApproxAbcd1, Examples) {
  EXPECT_EQ(eval_approx_abcd1(false, false, true, true), (ApproxOut{true, false}));
  EXPECT_EQ(eval_approx_abcd1(true, true, true, true), (ApproxOut{true, true}));
  EXPECT_EQ(eval_approx_abcd1(true, false, false, true), (ApproxOut{true, true}));
}

TEST(ApproxAbcd1, MatchesPublishedRowsAndNeverOvershoots) {
  for (unsigned r = 0; r < 16; ++r) {
    const auto& g = golden::kAbcd1[r];
    const auto o = eval_approx_abcd1(bit(r, 4, 0), bit(r, 4, 1), bit(r, 4, 2), bit(r, 4, 3));
    EXPECT_EQ(o, (ApproxOut{g.approx_carry == 1, g.approx_sum == 1})) << "row " << r;
    const int exact = std::popcount(r) + 1;
    EXPECT_EQ(exact - o.value(), g.ed) << "row " << r;
    EXPECT_LE(o.value(), exact);
  }
}

TEST(Competitors, Examples) {
  EXPECT_EQ(eval_competitor("ac5", false, false, false), 2);
  EXPECT_EQ(eval_competitor("ac3", true, true, true), 3);
  EXPECT_EQ(eval_competitor("ac1", true, false, false), 2);
}

TEST(Competitors, MatchPublishedColumns) {
  for (int d = 0; d < 5; ++d) {
    for (unsigned r = 0; r < 8; ++r) {
      const int v = eval_competitor(static_cast<Competitor>(d), bit(r, 3, 0), bit(r, 3, 1), bit(r, 3, 2));
      EXPECT_EQ(v, golden::kAbc1[r].competitor[d]) << "ac" << d + 1 << " row " << r;
      const auto& t = table(competitor_cell(static_cast<Competitor>(d)));
      EXPECT_EQ(t.approx_value(r), v);
    }
  }
}

TEST(Competitors, UnknownDesignIsNamedInError) {
  try {
    eval_competitor("ac9", false, false, false);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("ac9"), std::string::npos);
  }
}

TEST(Standard, Examples) {
  const bool fa[] = {true, true, true};
  EXPECT_EQ(eval_standard(StandardCell::FullAdder, fa), (std::vector<bool>{true, true}));
  const bool ha[] = {true, false};
  EXPECT_EQ(eval_standard(StandardCell::HalfAdder, ha), (std::vector<bool>{false, true}));
  const bool c42[] = {true, true, true, true, false};
  const auto o = eval_standard(StandardCell::Exact42, c42);
  EXPECT_EQ(2 * o[0] + 2 * o[1] + o[2], 4);
}

TEST(Standard, ArityMismatchRejected) {
  const bool two[] = {true, false};
  EXPECT_THROW(eval_standard(StandardCell::FullAdder, two), std::invalid_argument);
  EXPECT_THROW(eval_standard(StandardCell::Exact42, two), std::invalid_argument);
}

TEST(Registry, TablesAreCompleteAndExactCellsConserveValue) {
  for (CellId id : all_cells()) {
    const auto& t = table(id);
    ASSERT_EQ(t.rows.size(), t.row_count()) << t.name;
    ASSERT_EQ(t.input_polarities.size(), static_cast<std::size_t>(t.arity));
    ASSERT_EQ(t.output_names.size(), t.output_weights.size());
    for (unsigned r = 0; r < t.row_count(); ++r) {
      ASSERT_EQ(t.outputs(r).size(), t.output_weights.size());
      for (auto b : t.outputs(r)) ASSERT_LE(b, 1);
      const int inputs = std::popcount(r) + (t.has_const_one ? 1 : 0);
      EXPECT_EQ(t.exact_value(r), inputs);
      if (t.exact) EXPECT_EQ(t.approx_value(r), inputs) << t.name << " row " << r;
    }
    EXPECT_EQ(find_cell(cell_name(id)), id);
  }
  EXPECT_FALSE(find_cell("nosuch").has_value());
}

TEST(Registry, SignFocusedCellsPutTheNandFirst) {
  for (CellId id : all_cells()) {
    const auto& t = table(id);
    EXPECT_EQ(t.sign_focused(), t.has_const_one) << t.name;
    if (t.sign_focused()) EXPECT_EQ(t.input_polarities[0], Polarity::NegativeNand);
  }
}

TEST(Registry, FourTwoWeightConvention) {
  for (CellId id : {CellId::Abcd1Exact, CellId::Abc1Exact, CellId::Exact42}) {
    EXPECT_EQ(table(id).output_weights, (std::vector<int>{2, 2, 1}));
  }
}

TEST(Registry, MaxErrorDistances) {
  EXPECT_EQ(table(CellId::Abc1Approx).max_error_distance(), 1);
  EXPECT_EQ(table(CellId::Abcd1Approx).max_error_distance(), 2);
  const int expected[] = {2, 2, 1, 2, 1};
  for (int d = 0; d < 5; ++d) {
    EXPECT_EQ(table(competitor_cell(static_cast<Competitor>(d))).max_error_distance(), expected[d]);
  }
}

TEST(Cells, EvaluationIsPure) {
  for (int rep = 0; rep < 3; ++rep) {
    for (unsigned r = 0; r < 16; ++r) {
      const auto x = eval_approx_abcd1(bit(r, 4, 0), bit(r, 4, 1), bit(r, 4, 2), bit(r, 4, 3));
      const auto y = eval_approx_abcd1(bit(r, 4, 0), bit(r, 4, 1), bit(r, 4, 2), bit(r, 4, 3));
      EXPECT_EQ(x, y);
    }
  }
}

}  // namespace
