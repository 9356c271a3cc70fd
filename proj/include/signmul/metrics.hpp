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
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include "json.hpp"

#include "signmul/cells.hpp"
#include "signmul/multiplier.hpp"

namespace signmul::metrics {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kMaxExhaustiveWidth = 12;

// Independent per-input probabilities of a cell's inputs being 1.
struct InputDistribution {
  std::vector<Rational> p_one;

  // 1/4 for AND terms, 3/4 for NAND terms, 1 for constants.
  static InputDistribution from_polarities(std::span<const cells::Polarity> polarities);
  static InputDistribution for_cell(const cells::CellTable& t) { return from_polarities(t.input_polarities); }

  std::size_t arity() const { return p_one.size(); }
  // Joint probability of a row, first input as the most significant bit.
  Rational joint(unsigned row) const;
};

struct CellStats {
  Rational p_e;
  Rational e_mean;  // expectation of exact - approx
};

// Throws std::invalid_argument when the distribution arity differs from the
// table or a probability lies outside [0, 1].
CellStats cell_stats(const cells::CellTable& table, const InputDistribution& dist);
CellStats cell_stats(const cells::CellTable& table);

struct ErrorReport {
  double er = 0;
  double nmed = 0;
  double mred = 0;
  double mean_ed = 0;  // signed mean of exact - approx
  std::int64_t max_ed = 0;
  std::uint64_t pairs = 0;
  std::uint64_t zero_exact_skipped = 0;

  bool operator==(const ErrorReport&) const = default;
};

struct SweepOptions {
  unsigned threads = 0;  // 0 selects std::thread::hardware_concurrency()
  bool swap_operands = false;
};

// Every signed operand pair of width n. Requires cfg.width == n and
// n <= kMaxExhaustiveWidth.
ErrorReport exhaustive_report(const mult::MultiplierConfig& cfg, int n, SweepOptions opts = {});

// Uniform sample of operand pairs drawn from a generator seeded by (seed,
// chunk), so the result does not depend on the thread count. Falls back to the
// exhaustive sweep when sample_count covers the whole space.
ErrorReport sampled_report(const mult::MultiplierConfig& cfg, int n, std::uint64_t sample_count, std::uint64_t seed,
                           SweepOptions opts = {});

// True when m(a, b) == m(b, a) for every pair. Width must be <= 12.
bool operand_symmetric(const mult::Multiplier& m);

nlohmann::json to_json(const ErrorReport& r);
std::string csv_header();
std::string csv_row(std::string_view design, const ErrorReport& r);

}  // namespace signmul::metrics
