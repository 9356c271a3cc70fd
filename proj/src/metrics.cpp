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

#include "signmul/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace signmul::metrics {

namespace {

// Accumulators for one block of pairs. Blocks are merged in index order.
struct Partial {
  std::uint64_t pairs = 0;
  std::uint64_t errors = 0;
  std::uint64_t zero_exact = 0;
  std::int64_t sum_ed = 0;
  std::uint64_t sum_abs_ed = 0;
  std::int64_t max_ed = 0;
  double sum_red = 0;

  void add(std::int64_t exact, std::int64_t approx) {
    const std::int64_t ed = exact - approx;
    const std::int64_t abs_ed = ed < 0 ? -ed : ed;
    ++pairs;
    if (ed != 0) ++errors;
    sum_ed += ed;
    sum_abs_ed += static_cast<std::uint64_t>(abs_ed);
    max_ed = std::max(max_ed, abs_ed);
    if (exact == 0) {
      ++zero_exact;
    } else {
      sum_red += static_cast<double>(abs_ed) / static_cast<double>(exact < 0 ? -exact : exact);
    }
  }

  void merge(const Partial& o) {
    pairs += o.pairs;
    errors += o.errors;
    zero_exact += o.zero_exact;
    sum_ed += o.sum_ed;
    sum_abs_ed += o.sum_abs_ed;
    max_ed = std::max(max_ed, o.max_ed);
    sum_red += o.sum_red;
  }
};

unsigned worker_count(unsigned requested, std::size_t blocks) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, blocks));
}

template <typename Fn>
std::vector<Partial> run_blocks(std::size_t blocks, unsigned threads, Fn&& fn) {
  std::vector<Partial> out(blocks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < blocks; k = next++) out[k] = fn(k);
  };
  const unsigned n = worker_count(threads, blocks);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

ErrorReport finish(const std::vector<Partial>& parts, int n) {
  Partial total;
  for (const auto& p : parts) total.merge(p);
  ErrorReport r;
  r.pairs = total.pairs;
  r.zero_exact_skipped = total.zero_exact;
  r.max_ed = total.max_ed;
  if (total.pairs == 0) return r;
  const double pairs = static_cast<double>(total.pairs);
  // Largest exact magnitude over the signed range: (-2^(n-1))^2.
  const double max_exact = static_cast<double>(std::int64_t{1} << (2 * n - 2));
  r.er = static_cast<double>(total.errors) / pairs;
  r.mean_ed = static_cast<double>(total.sum_ed) / pairs;
  r.nmed = static_cast<double>(total.sum_abs_ed) / pairs / max_exact;
  const std::uint64_t nonzero = total.pairs - total.zero_exact;
  r.mred = nonzero ? total.sum_red / static_cast<double>(nonzero) : 0.0;
  return r;
}

void check_width(const mult::MultiplierConfig& cfg, int n) {
  if (cfg.width != n) {
    throw std::invalid_argument("config width " + std::to_string(cfg.width) + " differs from requested width " +
                                std::to_string(n));
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

InputDistribution InputDistribution::from_polarities(std::span<const cells::Polarity> polarities) {
  InputDistribution d;
  for (auto p : polarities) {
    switch (p) {
      case cells::Polarity::PositiveAnd: d.p_one.emplace_back(1, 4); break;
      case cells::Polarity::NegativeNand: d.p_one.emplace_back(3, 4); break;
      case cells::Polarity::ConstantOne: d.p_one.emplace_back(1); break;
    }
  }
  return d;
}

Rational InputDistribution::joint(unsigned row) const {
  Rational p = 1;
  const std::size_t k = p_one.size();
  for (std::size_t i = 0; i < k; ++i) {
    const bool one = (row >> (k - 1 - i)) & 1u;
    p *= one ? p_one[i] : Rational(1) - p_one[i];
  }
  return p;
}

CellStats cell_stats(const cells::CellTable& table, const InputDistribution& dist) {
  if (dist.arity() != static_cast<std::size_t>(table.arity)) {
    throw std::invalid_argument("distribution has " + std::to_string(dist.arity()) + " inputs, cell " + table.name +
                                " has " + std::to_string(table.arity));
  }
  for (const auto& p : dist.p_one) {
    if (p < 0 || p > 1) throw std::invalid_argument("input probability outside [0, 1]");
  }
  CellStats s{0, 0};
  for (unsigned r = 0; r < table.row_count(); ++r) {
    const int err = table.error(r);
    if (err == 0) continue;
    const Rational p = dist.joint(r);
    s.p_e += p;
    s.e_mean += p * err;
  }
  return s;
}

CellStats cell_stats(const cells::CellTable& table) { return cell_stats(table, InputDistribution::for_cell(table)); }

ErrorReport exhaustive_report(const mult::MultiplierConfig& cfg, int n, SweepOptions opts) {
  if (n > kMaxExhaustiveWidth) {
    throw std::invalid_argument("exhaustive sweep limited to width " + std::to_string(kMaxExhaustiveWidth) +
                                "; use sampled_report for width " + std::to_string(n));
  }
  check_width(cfg, n);
  const mult::Multiplier approx(cfg);
  const mult::Multiplier& exact = mult::exact_multiplier(n);
  const std::int64_t lo = ppm::SignedWord::min_value(n);
  const std::int64_t hi = ppm::SignedWord::max_value(n);
  const auto rows = static_cast<std::size_t>(hi - lo + 1);
  auto parts = run_blocks(rows, opts.threads, [&](std::size_t k) {
    Partial p;
    const std::int64_t a = lo + static_cast<std::int64_t>(k);
    for (std::int64_t b = lo; b <= hi; ++b) {
      const std::int64_t x = opts.swap_operands ? b : a;
      const std::int64_t y = opts.swap_operands ? a : b;
      p.add(exact.multiply(a, b), approx.multiply(x, y));
    }
    return p;
  });
  return finish(parts, n);
}

ErrorReport sampled_report(const mult::MultiplierConfig& cfg, int n, std::uint64_t sample_count, std::uint64_t seed,
                           SweepOptions opts) {
  if (sample_count == 0) throw std::invalid_argument("sample_count must be at least 1");
  check_width(cfg, n);
  if (n <= kMaxExhaustiveWidth && sample_count >= (std::uint64_t{1} << (2 * n))) {
    return exhaustive_report(cfg, n, opts);
  }
  constexpr std::uint64_t kChunk = 1 << 14;
  const mult::Multiplier approx(cfg);
  const mult::Multiplier& exact = mult::exact_multiplier(n);
  const std::int64_t lo = ppm::SignedWord::min_value(n);
  const std::int64_t hi = ppm::SignedWord::max_value(n);
  const auto chunks = static_cast<std::size_t>((sample_count + kChunk - 1) / kChunk);
  auto parts = run_blocks(chunks, opts.threads, [&](std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::int64_t> operand(lo, hi);
    const std::uint64_t begin = k * kChunk;
    const std::uint64_t count = std::min(kChunk, sample_count - begin);
    Partial p;
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::int64_t a = operand(rng);
      const std::int64_t b = operand(rng);
      const std::int64_t x = opts.swap_operands ? b : a;
      const std::int64_t y = opts.swap_operands ? a : b;
      p.add(exact.multiply(a, b), approx.multiply(x, y));
    }
    return p;
  });
  return finish(parts, n);
}

bool operand_symmetric(const mult::Multiplier& m) {
  const int n = m.width();
  if (n > kMaxExhaustiveWidth) throw std::invalid_argument("symmetry check limited to width 12");
  const std::int64_t lo = ppm::SignedWord::min_value(n);
  const std::int64_t hi = ppm::SignedWord::max_value(n);
  for (std::int64_t a = lo; a <= hi; ++a) {
    for (std::int64_t b = a + 1; b <= hi; ++b) {
      if (m.multiply(a, b) != m.multiply(b, a)) return false;
    }
  }
  return true;
}

nlohmann::json to_json(const ErrorReport& r) {
  return nlohmann::json{{"er", r.er},
                        {"nmed", r.nmed},
                        {"mred", r.mred},
                        {"mean_ed", r.mean_ed},
                        {"max_ed", r.max_ed},
                        {"pairs", r.pairs},
                        {"zero_exact_skipped", r.zero_exact_skipped}};
}

std::string csv_header() { return "design,er,nmed,mred,mean_ed,max_ed"; }

std::string csv_row(std::string_view design, const ErrorReport& r) {
  std::ostringstream os;
  os << design << ',' << fixed(r.er, 8) << ',' << fixed(r.nmed, 8) << ',' << fixed(r.mred, 8) << ','
     << fixed(r.mean_ed, 6) << ',' << r.max_ed;
  return os.str();
}

}  // namespace signmul::metrics
