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

// Published reference rows for the A+B+C+1 and A+B+C+D+1 cells, transcribed
// row by row. Rows are ordered with the NAND input as the most significant bit.

#pragma once

#include <array>
#include <string_view>

namespace golden {

struct Abc1Row {
  int p_num;  // joint probability numerator over 64
  int exact;
  std::array<int, 5> competitor;  // S_aprx of ac1..ac5
  int carry;
  int sum;
  int proposed;  // S_aprx of the proposed cell
};

inline constexpr std::array<Abc1Row, 8> kAbc1 = {{
    {9, 1, {1, 1, 1, 3, 2}, 0, 1, 1},
    {3, 2, {2, 1, 2, 3, 2}, 1, 1, 3},
    {3, 2, {2, 1, 2, 3, 2}, 1, 1, 3},
    {1, 3, {2, 3, 3, 3, 2}, 1, 1, 3},
    {27, 2, {2, 2, 1, 2, 2}, 1, 0, 2},
    {9, 3, {2, 3, 2, 3, 3}, 1, 1, 3},
    {9, 3, {2, 3, 2, 3, 3}, 1, 1, 3},
    {3, 4, {2, 2, 3, 2, 3}, 1, 1, 3},
}};

// Printed P_E and E_mean summary rows for ac1..ac5.
inline constexpr std::array<double, 5> kCompetitorPe = {0.3437, 0.1406, 0.7500, 0.2813, 0.2031};
inline constexpr std::array<double, 5> kCompetitorEmean = {0.3906, 0.1875, 0.7500, -0.2813, -0.0781};
inline constexpr double kProposedEmeanPrinted = -0.0468;
inline constexpr double kProposedPePrinted = 0.0140;

struct Abcd1Row {
  int p_num;  // over 256
  int cout;
  int carry;
  int sum;
  int approx_carry;
  int approx_sum;
  int ed;
};

inline constexpr std::array<Abcd1Row, 16> kAbcd1 = {{
    {27, 0, 0, 1, 0, 1, 0}, {9, 1, 0, 0, 1, 0, 0}, {9, 0, 1, 0, 1, 0, 0}, {3, 0, 1, 1, 1, 0, 1},
    {9, 0, 1, 0, 1, 0, 0},  {3, 0, 1, 1, 1, 1, 0}, {3, 0, 1, 1, 1, 1, 0}, {1, 1, 1, 0, 1, 1, 1},
    {81, 1, 0, 0, 1, 0, 0}, {27, 1, 0, 1, 1, 1, 0}, {27, 0, 1, 1, 1, 1, 0}, {9, 1, 1, 0, 1, 1, 1},
    {27, 0, 1, 1, 1, 1, 0}, {9, 1, 1, 0, 1, 1, 1}, {9, 1, 1, 0, 1, 1, 1},  {3, 1, 1, 1, 1, 1, 2},
}};

// Error-metric row of the proposed design at N = 8, in percent.
inline constexpr double kProposedEr = 98.04;
inline constexpr double kProposedNmed = 0.682;
inline constexpr double kProposedMred = 26.29;

}  // namespace golden
