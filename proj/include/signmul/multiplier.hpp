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
#include <utility>
#include <vector>

#include "signmul/cells.hpp"
#include "signmul/errors.hpp"
#include "signmul/ppm.hpp"

namespace signmul::mult {

enum class Variant : std::uint8_t { Exact, Proposed, Ac1, Ac2, Ac3, Ac4, Ac5, Custom };

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
// The seven named presets in display order: exact, proposed, ac1..ac5.
std::span<const Variant> preset_variants();

// A sign-focused cell bound to one constant-one bit of a CSP column.
struct CspCell {
  cells::CellId cell;
  int column;
  bool operator==(const CspCell&) const = default;
};

struct MultiplierConfig {
  int width = 8;
  Variant variant = Variant::Exact;
  // Cells of one column take their inputs in list order, so an earlier cell
  // gets first pick of the column's NAND terms.
  std::vector<CspCell> csp_cells;
  std::string msp_strategy = "exact";
  bool truncation = false;
  bool compensation = false;

  // Throws std::invalid_argument describing the first violated rule.
  void validate() const;
  bool operator==(const MultiplierConfig&) const = default;
};

MultiplierConfig preset(Variant v, int width = 8);

// key = value lines; '#' starts a comment. Keys: width, variant, truncation,
// compensation, csp_cells, msp_strategy. csp_cells is a comma separated list
// of <cell>@<column>. Throws FormatError on malformed text; the result is not
// validated.
MultiplierConfig parse_config(std::string_view text);
std::string to_text(const MultiplierConfig& cfg);

// Column occupancy before reduction, after each reduction stage, and the
// final two-row form fed to the adder. stage_count counts the final addition.
struct ReductionTrace {
  std::vector<std::vector<int>> occupancy;
  int stage_count = 0;
};

struct CellInstance {
  cells::CellId cell;
  int column = 0;
  int stage = 0;  // 1-based reduction stage
  std::vector<int> inputs;   // wire indices, in table input order
  std::vector<int> outputs;  // wire indices, -1 when the output leaves the word
};

/// A multiplier compiled to a fixed netlist of partial-product wires and cells.
///
/// Construction runs the matrix transforms selected by the config, places the
/// configured sign-focused cells in the first stage and schedules exact 4:2
/// compressors, full and half adders until every column holds at most two
/// bits. Evaluation walks the netlist in order and adds the two remaining rows
/// modulo 2^(2N). Instances are immutable and safe to share across threads.
class Multiplier {
 public:
  explicit Multiplier(MultiplierConfig cfg);

  const MultiplierConfig& config() const { return cfg_; }
  int width() const { return cfg_.width; }
  const ppm::PPMatrix& matrix() const { return matrix_; }
  const ReductionTrace& trace() const { return trace_; }
  std::span<const CellInstance> cells() const { return cells_; }

  // Operands are raw integers already known to fit the width.
  std::int64_t multiply(std::int64_t a, std::int64_t b) const;
  std::int64_t operator()(const ppm::SignedWord& a, const ppm::SignedWord& b) const;

 private:
  enum class SourceKind : std::uint8_t { And, Nand, One, Zero };
  struct Source {
    SourceKind kind;
    std::int8_t a_index;
    std::int8_t b_index;
  };
  struct CompiledCell {
    std::uint32_t first_input;
    std::uint8_t arity;
    std::uint8_t output_count;
    std::uint32_t first_output;
    const std::uint8_t* packed;  // per-row output bits, bit k = output k
  };

  void compile();

  MultiplierConfig cfg_;
  ppm::PPMatrix matrix_;
  ReductionTrace trace_;
  std::vector<CellInstance> cells_;

  std::vector<Source> sources_;  // wires [0, sources_.size()) come from the matrix
  std::size_t wire_count_ = 0;
  std::vector<CompiledCell> compiled_;
  std::vector<std::int32_t> flat_inputs_;
  std::vector<std::int32_t> flat_outputs_;
  std::vector<std::vector<std::uint8_t>> packed_tables_;
  std::vector<std::pair<std::int32_t, int>> final_bits_;  // (wire, column)
};

// Shared exact multiplier for a width in [4, 16].
const Multiplier& exact_multiplier(int width);

std::int64_t multiply_exact(const ppm::SignedWord& a, const ppm::SignedWord& b);
std::int64_t multiply_approx(const MultiplierConfig& cfg, const ppm::SignedWord& a, const ppm::SignedWord& b);
std::int64_t static_error_bound(const MultiplierConfig& cfg);
std::pair<std::int64_t, ReductionTrace> reduce_and_trace(const MultiplierConfig& cfg, const ppm::SignedWord& a,
                                                         const ppm::SignedWord& b);

}  // namespace signmul::mult
