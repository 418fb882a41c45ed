#pragma once

// chainlab command-line front end. run() is kept separate from main() so the
// test suite can drive every subcommand in-process.

#include "chainlab/addition_chains.hpp"
#include "chainlab/decompress.hpp"
#include "chainlab/exact_stats.hpp"
#include "chainlab/experiment.hpp"
#include "chainlab/json_io.hpp"
#include "chainlab/series.hpp"
#include "chainlab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace chainlab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kVerificationFailed = 2,
  kBudgetExceeded = 3,
};

struct RunConfig {
  unsigned k = 2;
  std::optional<unsigned> n;
  std::optional<unsigned> n_max;
  std::optional<unsigned> level_max;
  std::uint64_t seed = 1;
  std::uint64_t count = 1000;
  unsigned precision = kDefaultPrecisionBits;
  unsigned order = 30;
  std::optional<std::uint64_t> m;
  bool star = false;
  unsigned max_m = 11;
  std::string suite = "all";
  unsigned max_n = 6;
  std::string format = "csv";
  std::string out;
  std::size_t budget = kDefaultNodeBudget;
  std::string input;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void require_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw UsageError("--format must be csv or json");
  }
}

inline void require_arity_flag(unsigned k) {
  if (k < 2) throw UsageError("--k must be >= 2");
}

// Rows of string cells rendered as CSV (header first) or a JSON array of
// objects keyed by the header.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      Json arr = Json::array();
      for (const auto& row : rows_) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = row[i];
        arr.push_back(obj);
      }
      os << arr.dump(2) << "\n";
      return;
    }
    write_row(os, header_);
    for (const auto& row : rows_) write_row(os, row);
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        os << row[i];
        continue;
      }
      os << '"';
      for (char ch : row[i]) {
        if (ch == '"') os << '"';
        os << ch;
      }
      os << '"';
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string profile_cell(const LevelProfile& p) {
  std::string s;
  for (const auto& [level, count] : p) {
    if (!s.empty()) s += ' ';
    s += std::to_string(level) + ":" + count.str();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  require_arity_flag(cfg.k);
  unsigned lo = 1, hi = 10;
  if (cfg.n && cfg.n_max) throw UsageError("use either --n or --n-max");
  if (cfg.n) lo = hi = *cfg.n;
  if (cfg.n_max) hi = *cfg.n_max;
  std::vector<std::string> header{"n",           "k",
                                  "chain_count", "total_nodes",
                                  "expected_size", "expected_size_asymptotic",
                                  "level_mean",  "level_variance"};
  const unsigned levels = cfg.level_max.value_or(0);
  for (unsigned l = 1; l <= levels; ++l) header.push_back("d_" + std::to_string(l));
  Table table(header);
  for (unsigned n = lo; n <= hi; ++n) {
    std::vector<std::string> row{std::to_string(n), std::to_string(cfg.k),
                                 chain_count(n, cfg.k).str(),
                                 total_decompressed_nodes(n, cfg.k).str(),
                                 to_string(expected_size_exact(n, cfg.k))};
    if (n >= 1) {
      row.push_back(to_string(expected_size_asymptotic(n, cfg.k, cfg.precision), 20));
      const LevelMoments mom = level_moments(n, cfg.k);
      row.push_back(to_string(mom.mean));
      row.push_back(to_string(mom.variance));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    for (unsigned l = 1; l <= levels; ++l) {
      row.push_back(level_count_total(l, n, cfg.k).str());
    }
    table.add(std::move(row));
  }
  table.write(out, cfg.format);
  return kOk;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  require_arity_flag(cfg.k);
  if (!cfg.n) throw UsageError("sample needs --n");
  const SampleReport r = sample_experiment(cfg.k, *cfg.n, cfg.count, cfg.seed, cfg.precision);
  Table table({"field", "value"});
  table.add({"k", std::to_string(r.k)});
  table.add({"n", std::to_string(r.n)});
  table.add({"count", std::to_string(r.count)});
  table.add({"seed", std::to_string(r.seed)});
  table.add({"min_size", r.min_size.str()});
  table.add({"median_size", r.median_size.str()});
  table.add({"max_size", r.max_size.str()});
  const char* names[] = {"log2_size_min", "log2_size_q1", "log2_size_median", "log2_size_q3",
                         "log2_size_max"};
  for (std::size_t i = 0; i < r.log2_quantiles.size(); ++i) {
    table.add({names[i], to_string(r.log2_quantiles[i], 12)});
  }
  table.add({"empirical_mean", to_string(r.empirical_mean)});
  table.add({"exact_mean", to_string(r.exact_mean)});
  if (r.n >= 1) {
    table.add({"log2_exact_mean", to_string(r.log2_exact_mean, 12)});
    table.add({"asymptotic_mean", to_string(r.asymptotic_mean, 20)});
  }
  table.add({"note", kHeavyTailNote});
  table.write(out, cfg.format);
  return kOk;
}

inline int cmd_decompress(const RunConfig& cfg, std::ostream& out) {
  const Json j = chainlab::detail::parse_text(read_input(cfg.input));
  const RootedDag g = j.contains("targets") ? chain_to_dag(chain_from_json(j)) : dag_from_json(j);
  const DecompressedTree t = decompress_tree(g, cfg.budget);
  const LevelProfile profile = t.profile();
  if (cfg.format == "csv") {
    Table table({"level", "count"});
    for (const auto& [level, count] : profile) table.add({std::to_string(level), count.str()});
    table.write(out, "csv");
    return kOk;
  }
  Json levels = Json::object();
  for (const auto& [level, count] : profile) levels[std::to_string(level)] = count.str();
  // The tree is spliced in as text to avoid building a deep Json value.
  out << "{\"k\":" << g.k << ",\"size\":" << t.tree.size() << ",\"levels\":" << levels.dump()
      << ",\"tree\":" << tree_to_json_text(t.tree) << "}\n";
  return kOk;
}

inline int cmd_compress(const RunConfig& cfg, std::ostream& out) {
  const KTree t = tree_from_json_text(read_input(cfg.input));
  const RootedDag g = compress_tree(t);
  out << dag_to_json(g).dump() << "\n";
  return kOk;
}

inline int cmd_series(const RunConfig& cfg, std::ostream& out) {
  require_arity_flag(cfg.k);
  const unsigned levels = cfg.level_max.value_or(6);
  if (levels == 0) throw UsageError("--level-max must be >= 1");
  std::vector<std::string> header{"n"};
  std::vector<TruncatedSeries> parts;
  for (unsigned l = 1; l <= levels; ++l) {
    header.push_back("D_" + std::to_string(l));
    parts.push_back(level_series(l, cfg.k, cfg.order));
  }
  header.push_back("D_total");
  const TruncatedSeries whole = specialize_q_one(level_bivariate(cfg.k, cfg.order));
  Table table(header);
  for (unsigned n = 0; n <= cfg.order; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (const auto& s : parts) row.push_back(to_string(s[n]));
    row.push_back(to_string(whole[n]));
    table.add(std::move(row));
  }
  table.write(out, cfg.format);
  return kOk;
}

inline int cmd_brauer(const RunConfig& cfg, std::ostream& out) {
  Table table({"quantity", "value"});
  if (!cfg.input.empty()) {
    const Chain c = chain_from_json_text(read_input(cfg.input));
    std::string seq;
    for (const auto& a : k_brauer_from_chain(c)) seq += (seq.empty() ? "" : " ") + a.str();
    table.add({c.k == 2 ? "brauer_chain" : "k_brauer_chain", seq});
  }
  if (cfg.m) {
    if (cfg.star) {
      table.add({"l_star", std::to_string(min_star_chain_length(*cfg.m))});
    } else {
      table.add({"l", std::to_string(min_addition_chain_length(*cfg.m))});
    }
  }
  if (cfg.input.empty() && !cfg.m) throw UsageError("brauer needs --m or --input");
  table.write(out, cfg.format);
  return kOk;
}

inline int cmd_compressible(const RunConfig& cfg, std::ostream& out) {
  const auto counts = count_chain_compressible(cfg.max_m);
  Table table({"m", "count"});
  for (std::size_t i = 0; i < counts.size(); ++i) {
    table.add({std::to_string(i + 1), counts[i].str()});
  }
  table.write(out, cfg.format);
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  opt.max_n_binary = cfg.max_n;
  opt.max_n_ternary = std::min(cfg.max_n, 4u);
  opt.series_order = cfg.order;
  opt.precision_bits = cfg.precision;
  const auto results = verify(cfg.suite, opt);
  Table table({"suite", "check", "status", "detail"});
  bool all_ok = true;
  for (const auto& r : results) {
    table.add({r.suite, r.name, r.passed ? "pass" : "FAIL", r.detail});
    if (!r.passed) {
      all_ok = false;
      err << Json{{"suite", r.suite}, {"check", r.name}, {"status", "fail"},
                  {"detail", r.detail}}
                 .dump()
          << "\n";
    }
  }
  table.write(out, cfg.format);
  return all_ok ? kOk : kVerificationFailed;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"chainlab: decompressed sizes of k-ary chains", "chainlab"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format: csv or json");
    sub->add_option("--out", cfg.out, "Write output to this file");
  };
  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", cfg.k, "Arity (>= 2)"); };
  auto add_precision = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "Mantissa bits for real arithmetic");
  };

  auto* stats = app.add_subcommand("stats", "Exact counts, means and level moments");
  add_k(stats);
  stats->add_option("--n", cfg.n, "Single chain size");
  stats->add_option("--n-max", cfg.n_max, "Emit rows n = 1..N");
  stats->add_option("--level-max", cfg.level_max, "Add per-level columns d_1..d_L");
  add_precision(stats);
  add_common(stats);

  auto* sample = app.add_subcommand("sample", "Sample uniform chains and summarize sizes");
  add_k(sample);
  sample->add_option("--n", cfg.n, "Chain size")->required();
  sample->add_option("--count", cfg.count, "Number of samples");
  sample->add_option("--seed", cfg.seed, "Base seed");
  add_precision(sample);
  add_common(sample);

  auto* decompress = app.add_subcommand("decompress", "Materialize the decompressed tree");
  decompress->add_option("--input", cfg.input, "Chain or DAG JSON file ('-' for stdin)")
      ->required();
  decompress->add_option("--budget", cfg.budget, "Maximum internal nodes to build");
  decompress->add_option("--format", cfg.format, "json (tree) or csv (level profile)");
  decompress->add_option("--out", cfg.out, "Write output to this file");

  auto* compress = app.add_subcommand("compress", "Hash-cons a tree into its minimal DAG");
  compress->add_option("--input", cfg.input, "Tree JSON file ('-' for stdin)")->required();
  compress->add_option("--out", cfg.out, "Write output to this file");

  auto* series = app.add_subcommand("series", "Level generating-function coefficients");
  add_k(series);
  series->add_option("--level-max", cfg.level_max, "Highest level column");
  series->add_option("--order", cfg.order, "Truncation order");
  add_common(series);

  auto* brauer = app.add_subcommand("brauer", "Addition-chain lengths and Brauer chains");
  brauer->add_option("--m", cfg.m, "Target value");
  brauer->add_flag("--star", cfg.star, "Restrict to star (Brauer) chains");
  brauer->add_option("--input", cfg.input, "Chain JSON to convert");
  add_common(brauer);

  auto* compressible =
      app.add_subcommand("compressible", "Count trees that compress into chains");
  compressible->add_option("--max-m", cfg.max_m, "Largest leaf count");
  add_common(compressible);

  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle verification suite");
  verify_cmd->add_option("--suite", cfg.suite, "all, stats, series, decompress, bijections, brauer");
  verify_cmd->add_option("--max-n", cfg.max_n, "Largest binary chain size for exhaustive checks");
  verify_cmd->add_option("--order", cfg.order, "Series truncation order");
  add_precision(verify_cmd);
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kValidationError;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    detail::require_format(cfg);
    if (cfg.precision < 16) throw UsageError("--precision must be >= 16 bits");
    if (stats->parsed()) code = detail::cmd_stats(cfg, buffer);
    else if (sample->parsed()) code = detail::cmd_sample(cfg, buffer);
    else if (decompress->parsed()) code = detail::cmd_decompress(cfg, buffer);
    else if (compress->parsed()) code = detail::cmd_compress(cfg, buffer);
    else if (series->parsed()) code = detail::cmd_series(cfg, buffer);
    else if (brauer->parsed()) code = detail::cmd_brauer(cfg, buffer);
    else if (compressible->parsed()) code = detail::cmd_compressible(cfg, buffer);
    else if (verify_cmd->parsed()) code = detail::cmd_verify(cfg, buffer, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.out << "\n";
      return kValidationError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace chainlab::cli
