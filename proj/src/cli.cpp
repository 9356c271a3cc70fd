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

#include "signmul/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "signmul/cells.hpp"
#include "signmul/errors.hpp"
#include "signmul/imaging.hpp"
#include "signmul/metrics.hpp"
#include "signmul/multiplier.hpp"

namespace signmul::cli {

namespace {

constexpr const char* kPresetHelp =
    "preset: exact, proposed, ac1 (Esposito2018), ac2 (Guo2019), ac3 (Strollo2020), ac4 (Laimin), ac5 (Du2022)";

// Thrown for bad flag combinations found after CLI11 has parsed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DesignArgs {
  std::string design;
  std::string config_path;
  std::optional<int> width;
};

void add_design_options(CLI::App* cmd, DesignArgs& d, bool width_flag = true) {
  auto* design = cmd->add_option("--design", d.design, kPresetHelp);
  auto* config = cmd->add_option("--config", d.config_path, "key = value config file");
  design->excludes(config);
  if (width_flag) cmd->add_option("--width", d.width, "operand width in bits (default 8)");
}

mult::MultiplierConfig resolve(const DesignArgs& d) {
  if (!d.config_path.empty()) {
    std::ifstream in(d.config_path);
    if (!in) throw FormatError("cannot open config '" + d.config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = mult::parse_config(buf.str());
    if (d.width && *d.width != cfg.width) {
      throw UsageError("--width " + std::to_string(*d.width) + " conflicts with config width " +
                       std::to_string(cfg.width));
    }
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw FormatError(d.config_path + ": " + e.what());
    }
    return cfg;
  }
  if (d.design.empty()) throw UsageError("one of --design or --config is required");
  const auto v = mult::parse_variant(d.design);
  if (!v || *v == mult::Variant::Custom) throw UsageError("unknown design '" + d.design + "'");
  const int width = d.width.value_or(8);
  if (width < ppm::kMinWidth || width > ppm::kMaxWidth) {
    throw UsageError("--width must lie in [" + std::to_string(ppm::kMinWidth) + ", " +
                     std::to_string(ppm::kMaxWidth) + "]");
  }
  return mult::preset(*v, width);
}

const cells::CellTable& lookup_cell(const std::string& name) {
  const auto id = cells::find_cell(name);
  if (!id) throw UsageError("unknown cell '" + name + "'");
  return cells::table(*id);
}

// Fraction over 4^arity, the common denominator of the input distribution.
std::string fraction(const metrics::Rational& r, int arity) {
  const std::int64_t den = std::int64_t{1} << (2 * arity);
  const std::int64_t num = r.numerator() * (den / r.denominator());
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string decimal(const metrics::Rational& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << boost::rational_cast<double>(r);
  return os.str();
}

std::string percent(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v * 100.0 << " %";
  return os.str();
}

int truth_table(const std::string& name, const std::string& format, std::ostream& out) {
  const auto& t = lookup_cell(name);
  const auto dist = metrics::InputDistribution::for_cell(t);
  const std::vector<std::string> columns = {"cout", "carry", "sum"};
  auto output_of = [&](unsigned r, const std::string& col) -> std::string {
    for (std::size_t k = 0; k < t.output_names.size(); ++k) {
      if (t.output_names[k] == col) return std::to_string(t.outputs(r)[k]);
    }
    return "";
  };
  if (format == "csv") {
    out << "inputs,cout,carry,sum,value,exact,ed,probability\n";
    for (unsigned r = 0; r < t.row_count(); ++r) {
      std::string bits;
      for (int k = t.arity - 1; k >= 0; --k) bits += ((r >> k) & 1u) ? '1' : '0';
      out << bits;
      for (const auto& c : columns) out << ',' << output_of(r, c);
      out << ',' << t.approx_value(r) << ',' << t.exact_value(r) << ',' << std::abs(t.error(r)) << ','
          << fraction(dist.joint(r), t.arity) << '\n';
    }
    return kExitOk;
  }
  out << t.name << (t.exact ? " (exact)" : " (approximate)");
  if (t.has_const_one) out << ", constant 1 input";
  out << '\n';
  for (std::size_t k = 0; k < t.input_names.size(); ++k) {
    out << std::setw(4) << (t.input_polarities[k] == cells::Polarity::NegativeNand ? "~" + t.input_names[k]
                                                                                    : t.input_names[k]);
  }
  out << " | " << std::setw(9) << "P";
  for (const auto& c : columns) out << std::setw(6) << c;
  out << " | " << std::setw(5) << "exact" << std::setw(7) << "approx" << std::setw(4) << "ED" << '\n';
  for (unsigned r = 0; r < t.row_count(); ++r) {
    for (int k = t.arity - 1; k >= 0; --k) out << std::setw(4) << ((r >> k) & 1u);
    out << " | " << std::setw(9) << fraction(dist.joint(r), t.arity);
    for (const auto& c : columns) {
      const auto v = output_of(r, c);
      out << std::setw(6) << (v.empty() ? "-" : v);
    }
    out << " | " << std::setw(5) << t.exact_value(r) << std::setw(7) << t.approx_value(r) << std::setw(4)
        << std::abs(t.error(r)) << '\n';
  }
  return kExitOk;
}

int cell_stats(const std::string& name, std::ostream& out) {
  const auto& t = lookup_cell(name);
  const auto s = metrics::cell_stats(t);
  out << "cell: " << t.name << '\n';
  out << "p_e: " << fraction(s.p_e, t.arity) << " = " << decimal(s.p_e) << '\n';
  out << "e_mean: " << fraction(s.e_mean, t.arity) << " = " << decimal(s.e_mean) << '\n';
  if (t.name == "abc1-approx") {
    out << "note: the published P_E for this cell reads 0.0140; enumeration gives 9/64 = 0.140625\n";
  }
  return kExitOk;
}

struct AnalyzeArgs {
  DesignArgs design;
  bool json = false;
  bool csv = false;
  std::optional<std::uint64_t> sample;
  std::optional<std::uint64_t> seed;
};

int analyze(const AnalyzeArgs& a, unsigned threads, std::ostream& out) {
  const auto cfg = resolve(a.design);
  if (a.seed && !a.sample) throw UsageError("--seed requires --sample");
  if (!a.sample && cfg.width > metrics::kMaxExhaustiveWidth) {
    throw UsageError("exhaustive analysis is limited to width " + std::to_string(metrics::kMaxExhaustiveWidth) +
                     "; pass --sample <count>");
  }
  if (a.sample && *a.sample == 0) throw UsageError("--sample must be at least 1");
  const metrics::SweepOptions opts{threads, false};
  const auto report = a.sample ? metrics::sampled_report(cfg, cfg.width, *a.sample, a.seed.value_or(1), opts)
                               : metrics::exhaustive_report(cfg, cfg.width, opts);
  const std::string name(mult::variant_name(cfg.variant));
  if (a.json) {
    auto j = metrics::to_json(report);
    j["design"] = name;
    j["width"] = cfg.width;
    out << j.dump(2) << '\n';
  } else if (a.csv) {
    out << metrics::csv_header() << '\n' << metrics::csv_row(name, report) << '\n';
  } else {
    out << "design: " << name << '\n';
    out << "width: " << cfg.width << '\n';
    out << "mode: " << (a.sample ? "sampled" : "exhaustive") << '\n';
    out << "pairs: " << report.pairs << '\n';
    out << "ER: " << percent(report.er) << '\n';
    out << "NMED: " << percent(report.nmed) << '\n';
    out << "MRED: " << percent(report.mred) << '\n';
    out << "mean ED: " << std::fixed << std::setprecision(6) << report.mean_ed << '\n';
    out << "max ED: " << report.max_ed << '\n';
    out << "zero-exact pairs skipped: " << report.zero_exact_skipped << '\n';
  }
  return kExitOk;
}

int compare(int width, const std::string& path, unsigned threads, std::ostream& out) {
  if (width < ppm::kMinWidth || width > metrics::kMaxExhaustiveWidth) {
    throw UsageError("compare needs --width in [" + std::to_string(ppm::kMinWidth) + ", " +
                     std::to_string(metrics::kMaxExhaustiveWidth) + "]");
  }
  std::ostringstream csv;
  csv << metrics::csv_header() << '\n';
  for (auto v : mult::preset_variants()) {
    const auto report = metrics::exhaustive_report(mult::preset(v, width), width, {threads, false});
    csv << metrics::csv_row(mult::variant_name(v), report) << '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + path + "'");
  file << csv.str();
  if (!file) throw FormatError("write to '" + path + "' failed");
  out << "wrote " << mult::preset_variants().size() << " designs to " << path << '\n';
  return kExitOk;
}

int bound(const DesignArgs& d, std::ostream& out) {
  out << mult::static_error_bound(resolve(d)) << '\n';
  return kExitOk;
}

struct EdgeArgs {
  DesignArgs design;
  std::string in;
  std::string out;
  bool psnr = false;
};

int edge_detect(const EdgeArgs& a, unsigned threads, std::ostream& out) {
  const auto cfg = resolve(a.design);
  const auto img = imaging::load_pgm_file(a.in);
  const auto r = imaging::edge_detect(img, cfg, threads);
  imaging::save_pgm_file(r.edges, a.out);
  if (a.psnr) out << "psnr: " << r.psnr_vs_exact.to_string() << (r.psnr_vs_exact.infinite ? "" : " dB") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed approximate multiplier toolkit"};
  app.require_subcommand(1);
  unsigned threads = 0;

  std::string cell;
  std::string format = "text";
  auto* tt = app.add_subcommand("truth-table", "print the truth table of a cell");
  tt->add_option("--cell", cell, "cell name")->required();
  tt->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  std::string stats_cell;
  auto* cs = app.add_subcommand("cell-stats", "error probability and mean error of a cell");
  cs->add_option("--cell", stats_cell, "cell name")->required();

  AnalyzeArgs analyze_args;
  auto* an = app.add_subcommand("analyze", "error metrics of one design");
  add_design_options(an, analyze_args.design);
  auto* json = an->add_flag("--json", analyze_args.json, "JSON output");
  auto* csv = an->add_flag("--csv", analyze_args.csv, "CSV output");
  json->excludes(csv);
  an->add_option("--sample", analyze_args.sample, "sample this many operand pairs instead of all");
  an->add_option("--seed", analyze_args.seed, "seed for --sample (default 1)");

  int compare_width = 8;
  std::string compare_out;
  auto* cmp = app.add_subcommand("compare", "error metrics of every preset as CSV");
  cmp->add_option("--width", compare_width, "operand width in bits");
  cmp->add_option("--out", compare_out, "CSV output path")->required();

  DesignArgs bound_args;
  auto* bd = app.add_subcommand("bound", "static worst-case error distance of a design");
  add_design_options(bd, bound_args);

  EdgeArgs edge_args;
  auto* ed = app.add_subcommand("edge-detect", "Laplacian edge map of a PGM image");
  add_design_options(ed, edge_args.design);
  ed->add_option("--in", edge_args.in, "input PGM (P5 or P2)")->required();
  ed->add_option("--out", edge_args.out, "output PGM (P5)")->required();
  ed->add_flag("--psnr", edge_args.psnr, "print PSNR against the exact design");

  for (auto* sub : {an, cmp, ed}) sub->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*tt) return truth_table(cell, format, out);
    if (*cs) return cell_stats(stats_cell, out);
    if (*an) return analyze(analyze_args, threads, out);
    if (*cmp) return compare(compare_width, compare_out, threads, out);
    if (*bd) return bound(bound_args, out);
    if (*ed) return edge_detect(edge_args, threads, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace signmul::cli
