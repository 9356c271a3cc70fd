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

#include "signmul/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace signmul::mult {

using cells::CellId;
using cells::Polarity;

namespace {

constexpr std::array<std::string_view, 8> kVariantNames = {"exact", "proposed", "ac1", "ac2",
                                                           "ac3",   "ac4",      "ac5", "custom"};
constexpr std::array<Variant, 7> kPresets = {Variant::Exact, Variant::Proposed, Variant::Ac1, Variant::Ac2,
                                             Variant::Ac3,   Variant::Ac4,      Variant::Ac5};
constexpr int kMaxStages = 12;

std::optional<CellId> competitor_for(Variant v) {
  switch (v) {
    case Variant::Ac1: return CellId::Ac1;
    case Variant::Ac2: return CellId::Ac2;
    case Variant::Ac3: return CellId::Ac3;
    case Variant::Ac4: return CellId::Ac4;
    case Variant::Ac5: return CellId::Ac5;
    default: return std::nullopt;
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "yes" || value == "1") return true;
  if (value == "off" || value == "false" || value == "no" || value == "0") return false;
  throw FormatError("config key '" + key + "' expects on/off, got '" + value + "'");
}

// Wire bookkeeping used while scheduling the reduction.
enum class WireKind : std::uint8_t { And, Nand, One, Other };

struct Wire {
  int id;
  WireKind kind;
  int a_index = -1;
  int b_index = -1;
};

struct Schedule {
  std::vector<CellInstance> cells;
  std::vector<std::vector<Wire>> final_columns;
  std::vector<std::vector<int>> occupancy;
};

class Scheduler {
 public:
  Scheduler(int width, const std::vector<std::vector<Wire>>& initial, int first_free_wire, int zero_wire,
            const std::vector<CspCell>& fixed)
      : columns_count_(2 * width), initial_(initial), first_free_(first_free_wire), zero_(zero_wire), fixed_(fixed) {}

  std::optional<Schedule> run(int stages) {
    next_wire_ = first_free_;
    Schedule out;
    std::vector<std::vector<Wire>> columns = initial_;
    out.occupancy.push_back(heights(columns));
    for (int s = 1; s <= stages; ++s) {
      const int target = 1 << (stages - s + 1);
      std::vector<std::vector<Wire>> next(columns_count_);
      std::vector<std::vector<Wire>> horizontal(columns_count_ + 1);
      for (int c = 0; c < columns_count_; ++c) {
        std::deque<Wire> pool(columns[c].begin(), columns[c].end());
        if (s == 1) place_fixed(c, pool, horizontal[c], next, horizontal, out.cells);
        for (auto& w : horizontal[c]) pool.push_back(w);
        if (!reduce_column(c, s, target, pool, next, horizontal, out.cells)) return std::nullopt;
        for (auto& w : pool) next[c].push_back(w);
      }
      columns = std::move(next);
      out.occupancy.push_back(heights(columns));
    }
    for (const auto& col : columns) {
      if (col.size() > 2) return std::nullopt;
    }
    out.final_columns = std::move(columns);
    return out;
  }

 private:
  static std::vector<int> heights(const std::vector<std::vector<Wire>>& columns) {
    std::vector<int> h;
    for (const auto& c : columns) h.push_back(static_cast<int>(c.size()));
    return h;
  }

  // Emits one cell; outputs are routed by name: sum stays, carry moves to the
  // next stage one column up, cout feeds the column above within this stage.
  void emit(CellId id, int column, int stage, std::vector<int> inputs, std::vector<std::vector<Wire>>& next,
            std::vector<std::vector<Wire>>& horizontal, std::vector<CellInstance>& cells) {
    const auto& t = cells::table(id);
    CellInstance inst{id, column, stage, std::move(inputs), {}};
    for (const auto& name : t.output_names) {
      const int target = name == "sum" ? column : column + 1;
      if (target >= columns_count_) {
        inst.outputs.push_back(-1);
        continue;
      }
      const Wire w{next_wire_++, WireKind::Other};
      inst.outputs.push_back(w.id);
      if (name == "cout") {
        horizontal[target].push_back(w);
      } else {
        next[target].push_back(w);
      }
    }
    cells.push_back(std::move(inst));
  }

  static std::optional<Wire> take(std::deque<Wire>& pool, WireKind kind) {
    auto best = pool.end();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      if (it->kind != kind) continue;
      if (kind != WireKind::And) {
        best = it;
        break;
      }
      // Positive terms are taken from the outside of the column inwards.
      if (best == pool.end() || std::abs(it->a_index - it->b_index) > std::abs(best->a_index - best->b_index)) {
        best = it;
      }
    }
    if (best == pool.end()) return std::nullopt;
    Wire w = *best;
    pool.erase(best);
    return w;
  }

  void place_fixed(int c, std::deque<Wire>& pool, std::vector<Wire>& incoming, std::vector<std::vector<Wire>>& next,
                   std::vector<std::vector<Wire>>& horizontal, std::vector<CellInstance>& cells) {
    for (const auto& fc : fixed_) {
      if (fc.column != c) continue;
      const auto& t = cells::table(fc.cell);
      if (!take(pool, WireKind::One)) {
        throw std::invalid_argument("no constant-one bit left in column " + std::to_string(c) + " for " + t.name);
      }
      std::vector<int> inputs;
      for (auto polarity : t.input_polarities) {
        std::optional<Wire> w;
        if (polarity == Polarity::NegativeNand) w = take(pool, WireKind::Nand);
        if (!w) w = take(pool, WireKind::And);
        if (!w) w = take(pool, WireKind::Nand);
        if (!w && !incoming.empty()) {
          w = incoming.front();
          incoming.erase(incoming.begin());
        }
        inputs.push_back(w ? w->id : zero_);
      }
      emit(fc.cell, c, 1, std::move(inputs), next, horizontal, cells);
    }
  }

  bool reduce_column(int c, int stage, int target, std::deque<Wire>& pool, std::vector<std::vector<Wire>>& next,
                     std::vector<std::vector<Wire>>& horizontal, std::vector<CellInstance>& cells) {
    auto pop = [&pool]() {
      Wire w = pool.front();
      pool.pop_front();
      return w.id;
    };
    for (;;) {
      const int m = static_cast<int>(pool.size());
      const int excess = m + static_cast<int>(next[c].size()) - target;
      if (excess <= 0) return true;
      if (m >= 5 && excess >= 4) {
        std::vector<int> in = {pop(), pop(), pop(), pop()};
        in.push_back(pool.back().id);  // cin prefers a wire that arrived horizontally
        pool.pop_back();
        emit(CellId::Exact42, c, stage, std::move(in), next, horizontal, cells);
      } else if (m >= 4 && excess >= 3) {
        std::vector<int> in = {pop(), pop(), pop(), pop(), zero_};
        emit(CellId::Exact42, c, stage, std::move(in), next, horizontal, cells);
      } else if (m >= 3 && excess >= 2) {
        emit(CellId::FullAdder, c, stage, {pop(), pop(), pop()}, next, horizontal, cells);
      } else if (m >= 2) {
        emit(CellId::HalfAdder, c, stage, {pop(), pop()}, next, horizontal, cells);
      } else {
        return false;
      }
    }
  }

  int columns_count_;
  const std::vector<std::vector<Wire>>& initial_;
  int first_free_;
  int zero_;
  const std::vector<CspCell>& fixed_;
  int next_wire_ = 0;
};

std::int64_t wrap_signed(std::int64_t v, int bits) {
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  const std::uint64_t u = static_cast<std::uint64_t>(v) & mask;
  if (u >> (bits - 1)) return static_cast<std::int64_t>(u) - (std::int64_t{1} << bits);
  return static_cast<std::int64_t>(u);
}

}  // namespace

std::string_view variant_name(Variant v) { return kVariantNames[static_cast<std::size_t>(v)]; }

std::optional<Variant> parse_variant(std::string_view name) {
  for (std::size_t k = 0; k < kVariantNames.size(); ++k) {
    if (kVariantNames[k] == name) return static_cast<Variant>(k);
  }
  return std::nullopt;
}

std::span<const Variant> preset_variants() { return kPresets; }

MultiplierConfig preset(Variant v, int width) {
  MultiplierConfig cfg;
  cfg.width = width;
  cfg.variant = v;
  if (v == Variant::Exact || v == Variant::Custom) return cfg;
  cfg.truncation = true;
  cfg.compensation = true;
  const CellId approx = competitor_for(v).value_or(CellId::Abc1Approx);
  cfg.csp_cells = {
      {CellId::Abcd1Exact, width - 1},
      {approx, width},
      {CellId::Abcd1Exact, width},
  };
  return cfg;
}

void MultiplierConfig::validate() const {
  if (width < ppm::kMinWidth || width > ppm::kMaxWidth) {
    throw std::invalid_argument("width " + std::to_string(width) + " outside [" + std::to_string(ppm::kMinWidth) +
                                ", " + std::to_string(ppm::kMaxWidth) + "]");
  }
  if (msp_strategy != "exact") throw std::invalid_argument("unknown msp_strategy '" + msp_strategy + "'");
  if (compensation && !truncation) throw std::invalid_argument("compensation requires truncation");

  std::map<int, int> per_column;
  int approximate = 0;
  std::optional<CellId> approx_cell;
  for (const auto& c : csp_cells) {
    const auto& t = cells::table(c.cell);
    if (!t.sign_focused()) throw std::invalid_argument(t.name + " is not a sign-focused cell");
    if (c.column != width - 1 && c.column != width) {
      throw std::invalid_argument(t.name + "@" + std::to_string(c.column) + " is outside the CSP columns " +
                                  std::to_string(width - 1) + " and " + std::to_string(width));
    }
    ++per_column[c.column];
    if (!t.exact) {
      ++approximate;
      approx_cell = c.cell;
    }
  }
  // Constant ones available to sign-focused cells in each CSP column.
  const int low_constants = compensation ? 1 : 0;
  const int high_constants = 1 + (compensation ? 1 : 0);
  if (per_column[width - 1] > low_constants || per_column[width] > high_constants) {
    throw std::invalid_argument("more sign-focused cells than constant-one bits in a CSP column");
  }

  switch (variant) {
    case Variant::Exact:
      if (truncation || compensation || approximate > 0) {
        throw std::invalid_argument("exact variant requires truncation off, compensation off and exact cells");
      }
      break;
    case Variant::Custom:
      break;
    default: {
      if (!truncation || !compensation) {
        throw std::invalid_argument(std::string(variant_name(variant)) + " requires truncation and compensation");
      }
      if (csp_cells.size() != 3 || approximate != 1) {
        throw std::invalid_argument(std::string(variant_name(variant)) +
                                    " uses three sign-focused cells, exactly one approximate");
      }
      const auto expected = competitor_for(variant);
      if (expected ? *approx_cell != *expected
                   : (*approx_cell != CellId::Abc1Approx && *approx_cell != CellId::Abcd1Approx)) {
        throw std::invalid_argument(std::string(variant_name(variant)) + " cannot use approximate cell " +
                                    std::string(cells::cell_name(*approx_cell)));
      }
    }
  }
}

MultiplierConfig parse_config(std::string_view text) {
  MultiplierConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "width") {
      try {
        std::size_t used = 0;
        cfg.width = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw FormatError("config key 'width' expects an integer, got '" + value + "'");
      }
    } else if (key == "variant") {
      auto v = parse_variant(value);
      if (!v) throw FormatError("unknown variant '" + value + "'");
      cfg.variant = *v;
    } else if (key == "truncation") {
      cfg.truncation = parse_flag(key, value);
    } else if (key == "compensation") {
      cfg.compensation = parse_flag(key, value);
    } else if (key == "msp_strategy") {
      cfg.msp_strategy = value;
    } else if (key == "csp_cells") {
      cfg.csp_cells.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto at = item.find('@');
        if (at == std::string::npos) throw FormatError("csp cell '" + item + "' must be written <cell>@<column>");
        const auto cell = cells::find_cell(item.substr(0, at));
        if (!cell) throw FormatError("unknown cell '" + item.substr(0, at) + "'");
        int column = 0;
        try {
          column = std::stoi(item.substr(at + 1));
        } catch (const std::exception&) {
          throw FormatError("bad column in csp cell '" + item + "'");
        }
        cfg.csp_cells.push_back({*cell, column});
      }
    } else {
      throw FormatError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

std::string to_text(const MultiplierConfig& cfg) {
  std::ostringstream os;
  os << "width = " << cfg.width << '\n';
  os << "variant = " << variant_name(cfg.variant) << '\n';
  os << "truncation = " << (cfg.truncation ? "on" : "off") << '\n';
  os << "compensation = " << (cfg.compensation ? "on" : "off") << '\n';
  os << "csp_cells = ";
  for (std::size_t k = 0; k < cfg.csp_cells.size(); ++k) {
    if (k) os << ", ";
    os << cells::cell_name(cfg.csp_cells[k].cell) << '@' << cfg.csp_cells[k].column;
  }
  os << '\n';
  os << "msp_strategy = " << cfg.msp_strategy << '\n';
  return os.str();
}

Multiplier::Multiplier(MultiplierConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  matrix_ = ppm::generate_bw(cfg_.width);
  if (cfg_.truncation) matrix_ = ppm::apply_truncation(matrix_, ppm::partition(cfg_.width));
  if (cfg_.compensation) matrix_ = ppm::apply_compensation(matrix_);
  compile();
}

void Multiplier::compile() {
  std::vector<std::vector<Wire>> initial(matrix_.columns.size());
  for (const auto& column : matrix_.columns) {
    for (const auto& bit : column) {
      const int id = static_cast<int>(sources_.size());
      switch (bit.polarity) {
        case Polarity::PositiveAnd:
          sources_.push_back({SourceKind::And, static_cast<std::int8_t>(bit.a_index),
                              static_cast<std::int8_t>(bit.b_index)});
          initial[bit.column].push_back({id, WireKind::And, bit.a_index, bit.b_index});
          break;
        case Polarity::NegativeNand:
          sources_.push_back({SourceKind::Nand, static_cast<std::int8_t>(bit.a_index),
                              static_cast<std::int8_t>(bit.b_index)});
          initial[bit.column].push_back({id, WireKind::Nand, bit.a_index, bit.b_index});
          break;
        case Polarity::ConstantOne:
          sources_.push_back({SourceKind::One, -1, -1});
          initial[bit.column].push_back({id, WireKind::One});
          break;
      }
    }
  }
  const int zero = static_cast<int>(sources_.size());
  sources_.push_back({SourceKind::Zero, -1, -1});

  const bool trivial = cfg_.csp_cells.empty() &&
                       std::all_of(initial.begin(), initial.end(), [](const auto& c) { return c.size() <= 2; });
  Scheduler scheduler(cfg_.width, initial, zero + 1, zero, cfg_.csp_cells);
  std::optional<Schedule> schedule;
  int stages = trivial ? 0 : 1;
  for (; stages <= kMaxStages && !schedule; ++stages) schedule = scheduler.run(stages);
  if (!schedule) throw std::logic_error("reduction did not converge");

  cells_ = std::move(schedule->cells);
  trace_.occupancy = std::move(schedule->occupancy);
  trace_.stage_count = static_cast<int>(trace_.occupancy.size());  // reductions plus the final addition

  int max_wire = zero;
  for (const auto& c : cells_) {
    for (int w : c.outputs) max_wire = std::max(max_wire, w);
  }
  wire_count_ = static_cast<std::size_t>(max_wire) + 1;

  packed_tables_.resize(cells::all_cells().size());
  for (const auto& inst : cells_) {
    auto& packed = packed_tables_[static_cast<std::size_t>(inst.cell)];
    if (!packed.empty()) continue;
    const auto& t = cells::table(inst.cell);
    for (unsigned r = 0; r < t.row_count(); ++r) {
      std::uint8_t bits = 0;
      const auto out = t.outputs(r);
      for (std::size_t k = 0; k < out.size(); ++k) bits |= static_cast<std::uint8_t>(out[k] << k);
      packed.push_back(bits);
    }
  }
  for (const auto& inst : cells_) {
    CompiledCell cc{};
    cc.first_input = static_cast<std::uint32_t>(flat_inputs_.size());
    cc.arity = static_cast<std::uint8_t>(inst.inputs.size());
    cc.first_output = static_cast<std::uint32_t>(flat_outputs_.size());
    cc.output_count = static_cast<std::uint8_t>(inst.outputs.size());
    cc.packed = packed_tables_[static_cast<std::size_t>(inst.cell)].data();
    flat_inputs_.insert(flat_inputs_.end(), inst.inputs.begin(), inst.inputs.end());
    flat_outputs_.insert(flat_outputs_.end(), inst.outputs.begin(), inst.outputs.end());
    compiled_.push_back(cc);
  }
  for (std::size_t c = 0; c < schedule->final_columns.size(); ++c) {
    for (const auto& w : schedule->final_columns[c]) final_bits_.emplace_back(w.id, static_cast<int>(c));
  }
}

std::int64_t Multiplier::multiply(std::int64_t a, std::int64_t b) const {
  thread_local std::vector<std::uint8_t> wires;
  wires.assign(wire_count_, 0);
  const auto ua = static_cast<std::uint64_t>(a);
  const auto ub = static_cast<std::uint64_t>(b);
  for (std::size_t w = 0; w < sources_.size(); ++w) {
    const Source& s = sources_[w];
    switch (s.kind) {
      case SourceKind::And:
        wires[w] = static_cast<std::uint8_t>((ua >> s.a_index) & (ub >> s.b_index) & 1u);
        break;
      case SourceKind::Nand:
        wires[w] = static_cast<std::uint8_t>(~((ua >> s.a_index) & (ub >> s.b_index)) & 1u);
        break;
      case SourceKind::One:
        wires[w] = 1;
        break;
      case SourceKind::Zero:
        wires[w] = 0;
        break;
    }
  }
  for (const auto& cc : compiled_) {
    unsigned row = 0;
    for (std::uint32_t k = 0; k < cc.arity; ++k) row = (row << 1) | wires[flat_inputs_[cc.first_input + k]];
    const std::uint8_t bits = cc.packed[row];
    for (std::uint32_t k = 0; k < cc.output_count; ++k) {
      const std::int32_t w = flat_outputs_[cc.first_output + k];
      if (w >= 0) wires[w] = (bits >> k) & 1u;
    }
  }
  std::int64_t sum = 0;
  for (const auto& [w, column] : final_bits_) sum += static_cast<std::int64_t>(wires[w]) << column;
  return wrap_signed(sum, 2 * cfg_.width);
}

std::int64_t Multiplier::operator()(const ppm::SignedWord& a, const ppm::SignedWord& b) const {
  if (a.width() != cfg_.width || b.width() != cfg_.width) {
    throw std::invalid_argument("operand widths (" + std::to_string(a.width()) + ", " + std::to_string(b.width()) +
                                ") do not match multiplier width " + std::to_string(cfg_.width));
  }
  return multiply(a.value(), b.value());
}

const Multiplier& exact_multiplier(int width) {
  if (width < ppm::kMinWidth || width > ppm::kMaxWidth) {
    throw std::invalid_argument("width " + std::to_string(width) + " outside supported range");
  }
  static std::array<std::once_flag, ppm::kMaxWidth + 1> once;
  static std::array<std::unique_ptr<Multiplier>, ppm::kMaxWidth + 1> cache;
  std::call_once(once[width], [width] { cache[width] = std::make_unique<Multiplier>(preset(Variant::Exact, width)); });
  return *cache[width];
}

std::int64_t multiply_exact(const ppm::SignedWord& a, const ppm::SignedWord& b) {
  if (a.width() != b.width()) throw std::invalid_argument("operand widths differ");
  return exact_multiplier(a.width())(a, b);
}

std::int64_t multiply_approx(const MultiplierConfig& cfg, const ppm::SignedWord& a, const ppm::SignedWord& b) {
  return Multiplier(cfg)(a, b);
}

std::int64_t static_error_bound(const MultiplierConfig& cfg) {
  cfg.validate();
  std::int64_t bound = 0;
  // The truncation term also covers the substituted NAND at 2^N, since
  // max_truncated_value(N) >= 2^N for every N >= 4.
  if (cfg.truncation) bound += ppm::max_truncated_value(cfg.width);
  if (cfg.compensation) bound += ppm::compensation_constant(cfg.width);
  for (const auto& c : cfg.csp_cells) {
    const auto& t = cells::table(c.cell);
    if (!t.exact) bound += static_cast<std::int64_t>(t.max_error_distance()) << c.column;
  }
  return bound;
}

std::pair<std::int64_t, ReductionTrace> reduce_and_trace(const MultiplierConfig& cfg, const ppm::SignedWord& a,
                                                         const ppm::SignedWord& b) {
  Multiplier m(cfg);
  return {m(a, b), m.trace()};
}

}  // namespace signmul::mult
