#pragma once

// Oracle suite behind `chainlab verify`: every closed form is compared with an
// independent route (exhaustive enumeration, recurrence, or brute force).

#include "chainlab/addition_chains.hpp"
#include "chainlab/bijections.hpp"
#include "chainlab/chain.hpp"
#include "chainlab/decompress.hpp"
#include "chainlab/exact_stats.hpp"
#include "chainlab/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace chainlab {

struct VerifyOptions {
  unsigned max_n_binary = 6;
  unsigned max_n_ternary = 4;
  unsigned series_order = 30;
  unsigned precision_bits = kDefaultPrecisionBits;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"stats", "series", "decompress",
                                               "bijections", "brauer"};
  return suites;
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void expect(const std::string& name, bool ok, std::string detail = {}) {
    results_.push_back({suite_, name, ok, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

inline LevelProfile brute_force_levels(unsigned k, unsigned n) {
  LevelProfile sum;
  for_each_chain(k, n, [&](const Chain& c) { accumulate(sum, level_profile(c)); });
  return sum;
}

inline std::vector<CheckResult> verify_stats(const VerifyOptions& opt) {
  Recorder rec("stats");
  const BigInt printed[] = {1, 5, 28, 185, 1426, 12607};
  for (unsigned n = 1; n <= 6; ++n) {
    const BigInt got = total_decompressed_nodes(n, 2);
    rec.expect("total_nodes k=2 n=" + std::to_string(n), got == printed[n - 1],
               "got " + got.str() + ", expected " + printed[n - 1].str());
  }
  auto closed_vs_brute = [&](unsigned k, unsigned max_n) {
    for (unsigned n = 0; n <= max_n; ++n) {
      const LevelProfile brute = brute_force_levels(k, n);
      bool ok = true;
      std::string detail;
      for (unsigned l = 1; l <= n + 1; ++l) {
        auto it = brute.find(l);
        const BigInt b = it == brute.end() ? BigInt(0) : it->second;
        const BigInt c = level_count_total(l, n, k);
        if (b != c) {
          ok = false;
          detail = "level " + std::to_string(l) + ": brute " + b.str() + ", closed " + c.str();
          break;
        }
      }
      rec.expect("levels closed form k=" + std::to_string(k) + " n=" + std::to_string(n),
                 ok, detail);
    }
  };
  closed_vs_brute(2, opt.max_n_binary);
  closed_vs_brute(3, opt.max_n_ternary);

  std::string failed;
  for (unsigned n = 1; n <= 40; ++n) {
    if (!laguerre_check(n)) failed += " " + std::to_string(n);
  }
  rec.expect("laguerre n<=40", failed.empty(), failed.empty() ? "" : "fails at n =" + failed);

  failed.clear();
  for (unsigned k = 2; k <= 4; ++k) {
    for (unsigned n = 0; n <= 12; ++n) {
      const Rational lhs(total_decompressed_nodes(n, k));
      const Rational rhs = Rational(chain_count(n, k)) * expected_size_exact(n, k);
      if (lhs != rhs) failed += " (k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
    }
  }
  rec.expect("total = count * mean", failed.empty(), failed);

  for (unsigned k : {2u, 3u}) {
    Real prev = 0;
    bool decreasing = true;
    std::string detail;
    for (unsigned n : {100u, 1000u, 10000u}) {
      Real err = boost::multiprecision::abs(asymptotic_ratio(n, k, opt.precision_bits) - 1);
      detail += "n=" + std::to_string(n) + ":" + to_string(err, 6) + " ";
      if (n != 100 && !(err < prev)) decreasing = false;
      prev = err;
    }
    rec.expect("asymptotic error decreasing k=" + std::to_string(k),
               decreasing && prev <= Real(0.05), detail);
  }
  return rec.take();
}

inline std::vector<CheckResult> verify_series(const VerifyOptions& opt) {
  Recorder rec("series");
  const unsigned N = opt.series_order;
  for (unsigned k = 2; k <= 4; ++k) {
    for (unsigned l = 1; l <= 6; ++l) {
      const TruncatedSeries s = level_series(l, k, N);
      bool ok = true;
      for (unsigned n = 0; n <= N; ++n) ok = ok && s[n] == level_coefficient(l, n, k);
      std::vector<BigInt> counts = series_to_counts(s, k - 1);
      for (unsigned n = 0; n <= N; ++n) ok = ok && counts[n] == level_count_total(l, n, k);
      rec.expect("level_series k=" + std::to_string(k) + " l=" + std::to_string(l), ok);
    }
  }
  const TruncatedSeries c = chain_series(N);
  rec.expect("C = 1 + add_root(C)",
             add(TruncatedSeries::constant(N, 1), add_root(c)) == c);
  for (unsigned k = 2; k <= 4; ++k) {
    rec.expect("bivariate closed form k=" + std::to_string(k), bivariate_check(k, 20));
  }
  return rec.take();
}

inline std::vector<CheckResult> verify_decompress(const VerifyOptions& opt) {
  Recorder rec("decompress");
  for (unsigned k : {2u, 3u}) {
    bool ok = true;
    for (unsigned n = 0; n <= 20; ++n) {
      ok = ok && decompressed_size(all_sink_chain(k, n)) == n;
      ok = ok && decompressed_size(all_previous_chain(k, n)) == (ipow(BigInt(k), n) - 1) / (k - 1);
    }
    rec.expect("extremes k=" + std::to_string(k), ok);
  }
  for (unsigned k : {2u, 3u}) {
    const unsigned max_n = k == 2 ? opt.max_n_binary : opt.max_n_ternary;
    bool ok = true;
    for (unsigned n = 0; n <= max_n; ++n) {
      for_each_chain(k, n, [&](const Chain& c) {
        const DecompressedTree t = decompress_tree(c);
        ok = ok && BigInt(t.tree.size()) == decompressed_size(c);
        ok = ok && t.profile() == level_profile(c);
        ok = ok && compress_tree(t.tree) == chain_to_dag(c);
      });
    }
    rec.expect("operator vs DP and round trip k=" + std::to_string(k), ok);
  }
  return rec.take();
}

inline std::vector<CheckResult> verify_bijections(const VerifyOptions& opt) {
  Recorder rec("bijections");
  auto fibers = [&](unsigned k, unsigned max_n, unsigned max_level) {
    for (unsigned n = 1; n <= max_n; ++n) {
      for (unsigned l = 1; l <= std::min(n, max_level); ++l) {
        const FiberScan s = scan_phi_fibers(k, n, l);
        const bool ok = s.ok() && s.valid_traversals == level_count_total(l, n, k);
        rec.expect("phi fibers k=" + std::to_string(k) + " n=" + std::to_string(n) +
                       " l=" + std::to_string(l),
                   ok,
                   "valid " + s.valid_traversals.str() + ", images " + s.images.str());
      }
    }
  };
  fibers(2, opt.max_n_binary, 4);
  fibers(3, opt.max_n_ternary, 3);

  for (unsigned n = 1; n <= opt.max_n_binary; ++n) {
    std::vector<BigInt> sums(n + 1, 0);
    Permutation p = identity_permutation(n);
    do {
      for (unsigned l = 1; l <= n; ++l) sums[l] += count_increasing_subsequences(p, l);
    } while (std::next_permutation(p.begin(), p.end()));
    bool ok = true;
    for (unsigned l = 1; l <= n; ++l) ok = ok && sums[l] == level_count_total(l, n, 2);
    rec.expect("equidistribution n=" + std::to_string(n), ok);
  }
  for (unsigned n = 1; n <= std::min(opt.max_n_binary, 5u); ++n) {
    const BigInt brute = strict_partial_permutation_count(n);
    rec.expect("partial permutations n=" + std::to_string(n),
               brute == total_decompressed_nodes(n, 2), brute.str());
  }
  const JointProfileCounts j = joint_profile_counterexample();
  rec.expect("joint profile counterexample", j.permutations == 4 && j.chains == 5,
             std::to_string(j.permutations) + "," + std::to_string(j.chains));
  return rec.take();
}

inline std::vector<CheckResult> verify_brauer(const VerifyOptions& opt) {
  Recorder rec("brauer");
  bool ok = true;
  for (unsigned n = 0; n <= opt.max_n_binary; ++n) {
    for_each_chain(2, n, [&](const Chain& c) {
      const BrauerChain b = brauer_from_chain(c);
      ok = ok && chain_from_brauer(b) == c && brauer_from_chain(chain_from_brauer(b)) == b;
    });
  }
  rec.expect("brauer round trip", ok);
  rec.expect("squaring chain", brauer_from_chain(all_previous_chain(2, 4)) ==
                                   BrauerChain{1, 2, 4, 8, 16});
  rec.expect("l*(16) = 4", min_star_chain_length(16) == 4);
  for (unsigned m = 1; m <= kScholzBrauerLimit; ++m) {
    rec.expect("scholz-brauer m=" + std::to_string(m), scholz_brauer_check(m));
  }
  const std::vector<BigInt> expected{1, 1, 1, 2, 3, 6, 10, 20, 36, 70, 130};
  rec.expect("chain-compressible m<=11", count_chain_compressible(11) == expected);
  return rec.take();
}

}  // namespace detail

// Runs one suite by name, or every suite for "all".
inline std::vector<CheckResult> verify(const std::string& suite, const VerifyOptions& opt = {}) {
  using Runner = std::function<std::vector<CheckResult>(const VerifyOptions&)>;
  const std::vector<std::pair<std::string, Runner>> runners{
      {"stats", detail::verify_stats},
      {"series", detail::verify_series},
      {"decompress", detail::verify_decompress},
      {"bijections", detail::verify_bijections},
      {"brauer", detail::verify_brauer},
  };
  std::vector<CheckResult> out;
  bool matched = false;
  for (const auto& [name, run] : runners) {
    if (suite != "all" && suite != name) continue;
    matched = true;
    auto part = run(opt);
    out.insert(out.end(), part.begin(), part.end());
  }
  if (!matched) throw std::invalid_argument("unknown verification suite: " + suite);
  return out;
}

}  // namespace chainlab
