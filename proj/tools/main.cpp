// Command line front end: exact searches, scans with a persistent cache,
// explicit constructions, closed-form bounds, divisor-condition scans and
// total-variation distances, with text, CSV and JSON output.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqavoid/bounds.hpp"
#include "sqavoid/constructions.hpp"
#include "sqavoid/density.hpp"
#include "sqavoid/numtheory.hpp"
#include "sqavoid/residues.hpp"
#include "sqavoid/search.hpp"
#include "sqavoid/serialization.hpp"

namespace {

using namespace sqavoid;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_dashes(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::optional<ResultCache> open_cache(const std::string& flag_dir) {
  std::string dir = flag_dir.empty() ? ResultCache::directory_from_env() : flag_dir;
  if (dir.empty()) return std::nullopt;
  return ResultCache(dir + "/search_cache.csv");
}

int run_search(std::uint64_t m, std::uint64_t nodes, double seconds,
               bool require_exact, bool as_json) {
  SearchBudget budget{nodes, seconds};
  const SearchResult r = max_avoiding(m, budget);
  if (as_json) {
    std::printf("%s\n", to_json(r, 2).c_str());
  } else {
    std::printf("m=%" PRIu64 " best_size=%u exact=%s bounds=[%u,%u] nodes=%" PRIu64
                " elapsed_ms=%s\n",
                r.m, r.best_size, r.exact ? "yes" : "no", r.lower_bound,
                r.upper_bound, r.nodes_explored, fmt_double(r.elapsed_ms).c_str());
    std::printf("witness: %s\n", join_dashes(r.witness).c_str());
    if (!r.note.empty()) std::printf("note: %s\n", r.note.c_str());
  }
  if (require_exact && !r.exact) return 2;
  return 0;
}

int run_scan(std::uint64_t from, std::uint64_t to, std::uint64_t nodes,
             double seconds, bool squarefree_only, bool odd_only,
             const std::string& cache_dir, unsigned threads, bool as_json) {
  SearchBudget budget{nodes, seconds};
  ScanFilters filters{squarefree_only, odd_only};
  auto cache = open_cache(cache_dir);
  auto records =
      scan_table(from, to, budget, filters, cache ? &*cache : nullptr, threads);
  if (as_json) {
    std::string out = "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      if (i) out += ",";
      if (rec.ok) {
        out += "{\"m\":" + std::to_string(rec.m) +
               ",\"best_size\":" + std::to_string(rec.result.best_size) +
               ",\"exact\":" + (rec.result.exact ? "true" : "false") +
               ",\"upper_bound\":" + std::to_string(rec.result.upper_bound) +
               ",\"witness\":\"" + join_dashes(rec.result.witness) + "\"}";
      } else {
        out += "{\"m\":" + std::to_string(rec.m) + ",\"error\":\"" + rec.error +
               "\"}";
      }
    }
    out += "]";
    std::printf("%s\n", out.c_str());
  } else {
    std::printf("m,best_size,exact,upper_bound,witness\n");
    for (const auto& rec : records) {
      if (rec.ok) {
        std::printf("%s\n", ResultCache::format_line(rec.result).c_str());
      } else {
        std::printf("%" PRIu64 ",NA,error,,%s\n", rec.m, rec.error.c_str());
      }
    }
  }
  return 0;
}

int run_construct(const std::string& method, std::uint64_t p, std::uint64_t q1,
                  std::uint64_t q2, std::uint64_t m, bool as_json) {
  ConstructionOutput out;
  if (method == "cohen") {
    out = cohen_set(p);
  } else if (method == "two-prime") {
    out = two_prime_set(q1, q2);
  } else if (method == "p-square") {
    out = p_square_set(p);
  } else if (method == "ruzsa65") {
    out = ruzsa65();
  } else if (method == "product") {
    out = product_set(factorize(m));
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }
  if (as_json) {
    std::printf("%s\n", to_json(out, 2).c_str());
  } else {
    std::printf("m=%" PRIu64 " method=%s size=%zu guaranteed=%s\n", out.m,
                to_string(out.method).c_str(), out.set.size(),
                fmt_double(out.guaranteed_size).c_str());
    std::printf("set: %s\n", join_dashes(out.set).c_str());
  }
  return 0;
}

int run_bounds(std::uint64_t m, bool as_json) {
  const BoundReport report = bound_report(factorize(m));
  if (as_json) {
    std::printf("%s\n", to_json(report, 2).c_str());
    return 0;
  }
  std::printf("m = %" PRIu64 "\n", report.m);
  for (const auto& e : report.bounds) {
    if (e.applicable) {
      std::printf("  %-20s %-18s (effective %s)\n", e.name.c_str(),
                  fmt_double(e.value).c_str(), fmt_double(e.effective).c_str());
    } else {
      std::printf("  %-20s n/a                (%s)\n", e.name.c_str(),
                  e.reason.c_str());
    }
  }
  std::printf("best = %s\n", fmt_double(report.best).c_str());
  return 0;
}

int run_density(double x, double eps, double scale,
                const std::string& variant_name, unsigned threads, bool as_csv,
                bool as_json, bool dump_grid, bool synthetic) {
  const TailVariant variant = variant_name == "smooth"
                                  ? TailVariant::smooth_part
                                  : TailVariant::tail_product;
  if (dump_grid) {
    const PoissonGrid grid = build_grid(x, eps, scale, synthetic);
    std::printf("%s\n", to_json(grid, 2).c_str());
    return 0;
  }
  if (!(x >= 16 && x <= 1e8))
    throw std::invalid_argument("density scans need x in [16, 1e8]");
  const DensityReport rep =
      density_scan(static_cast<std::uint64_t>(x), eps, scale, variant, threads);
  if (as_json) {
    std::printf("%s\n", to_json(rep, 2).c_str());
  } else if (as_csv) {
    std::printf(
        "x,eps,scale,variant,total,fail_small_powerful,fail_few_divisors,"
        "fail_dominant,fail_smooth_bound,alternating_hits,grid_valid,levels,"
        "failure_scale,frac_small_powerful,frac_few_divisors,frac_dominant,"
        "frac_smooth_bound,frac_alternating\n");
    std::printf("%" PRIu64 ",%s,%s,%s,%" PRIu64 ",%" PRIu64 ",%" PRIu64
                ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%d,%d,%s,%s,%s,%s,%s,%s\n",
                rep.x, fmt_double(rep.eps).c_str(), fmt_double(rep.scale).c_str(),
                to_string(rep.variant).c_str(), rep.total,
                rep.fail_small_powerful, rep.fail_few_divisors, rep.fail_dominant,
                rep.fail_smooth_bound, rep.alternating_hits,
                rep.grid_valid ? 1 : 0, rep.levels,
                fmt_double(rep.failure_scale).c_str(),
                fmt_double(rep.frac_fail_small_powerful()).c_str(),
                fmt_double(rep.frac_fail_few_divisors()).c_str(),
                fmt_double(rep.frac_fail_dominant()).c_str(),
                fmt_double(rep.frac_fail_smooth_bound()).c_str(),
                fmt_double(rep.frac_alternating_hits()).c_str());
  } else {
    std::printf("x=%" PRIu64 " eps=%s variant=%s total=%" PRIu64 "\n", rep.x,
                fmt_double(rep.eps).c_str(), to_string(rep.variant).c_str(),
                rep.total);
    std::printf("  fail small_powerful: %" PRIu64 " (%s)\n",
                rep.fail_small_powerful,
                fmt_double(rep.frac_fail_small_powerful()).c_str());
    std::printf("  fail few_divisors:   %" PRIu64 " (%s)\n",
                rep.fail_few_divisors,
                fmt_double(rep.frac_fail_few_divisors()).c_str());
    std::printf("  fail dominant:       %" PRIu64 " (%s)\n", rep.fail_dominant,
                fmt_double(rep.frac_fail_dominant()).c_str());
    if (rep.grid_valid) {
      std::printf("  fail smooth_bound:   %" PRIu64 " (%s)\n",
                  rep.fail_smooth_bound,
                  fmt_double(rep.frac_fail_smooth_bound()).c_str());
      std::printf("  alternating hits:    %" PRIu64 " (%s)\n",
                  rep.alternating_hits,
                  fmt_double(rep.frac_alternating_hits()).c_str());
    } else {
      std::printf("  grid degenerate at these parameters; window tallies off\n");
    }
    std::printf("  failure_scale c(eps) = %s\n",
                fmt_double(rep.failure_scale).c_str());
  }
  return 0;
}

int run_tv(std::uint64_t x, const std::vector<std::string>& window_specs,
           bool as_json) {
  std::vector<PrimeClassSet> windows;
  for (const auto& spec : window_specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("window must be lo:hi, got " + spec);
    const double lo = std::stod(spec.substr(0, colon));
    const double hi = std::stod(spec.substr(colon + 1));
    windows.push_back(primes_in_class(lo, hi, ResidueClass::three,
                                      "(" + spec + "]"));
  }
  const double tv = tv_distance_empirical(x, windows);
  if (as_json) {
    std::printf("{\"schema\":1,\"type\":\"tv\",\"x\":%" PRIu64 ",\"tv\":%.17g}\n",
                x, tv);
  } else {
    std::printf("tv = %.17g\n", tv);
  }
  return 0;
}

int run_table(std::uint64_t from, std::uint64_t to, std::uint64_t nodes,
              double seconds, const std::string& cache_dir, unsigned threads) {
  SearchBudget budget{nodes, seconds};
  auto cache = open_cache(cache_dir);
  auto records =
      scan_table(from, to, budget, {}, cache ? &*cache : nullptr, threads);
  std::printf(
      "m,squarefree,omega,omega3,best_size,exact,charsum_bound,"
      "best_analytic_bound\n");
  for (const auto& rec : records) {
    const Factorization f = factorize(rec.m);
    const auto charsum = character_sum_bound(f);
    const BoundReport report = bound_report(f);
    std::string best_size = "NA", exact = "error";
    if (rec.ok) {
      best_size = std::to_string(rec.result.best_size);
      exact = rec.result.exact ? "1" : "0";
    }
    std::printf("%" PRIu64 ",%d,%u,%u,%s,%s,%s,%s\n", rec.m,
                f.squarefree() ? 1 : 0, omega(f), omega3(f), best_size.c_str(),
                exact.c_str(), charsum ? fmt_double(*charsum).c_str() : "na",
                fmt_double(report.best).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"avoiding-set toolkit: sets in Z_m whose differences avoid "
               "the squares mod m"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  // search
  auto* search = app.add_subcommand("search", "exact maximum avoiding set");
  std::uint64_t s_m = 0, s_nodes = 20'000'000;
  double s_seconds = 0;
  bool s_require_exact = false, s_json = false;
  search->add_option("--m", s_m, "modulus")->required();
  search->add_option("--budget-nodes", s_nodes, "node budget");
  search->add_option("--budget-seconds", s_seconds, "wall clock cap (0 = off)");
  search->add_flag("--require-exact", s_require_exact,
                   "exit 2 if the budget is exhausted");
  search->add_flag("--json", s_json, "JSON output");

  // scan
  auto* scan = app.add_subcommand("scan", "search a range of moduli");
  std::uint64_t c_from = 0, c_to = 0, c_nodes = 20'000'000;
  double c_seconds = 0;
  bool c_squarefree = false, c_odd = false, c_json = false;
  std::string c_cache_dir;
  scan->add_option("--from", c_from, "first modulus")->required();
  scan->add_option("--to", c_to, "last modulus")->required();
  scan->add_option("--budget-nodes", c_nodes, "node budget per modulus");
  scan->add_option("--budget-seconds", c_seconds, "wall clock cap per modulus");
  scan->add_flag("--squarefree-only", c_squarefree, "only squarefree moduli");
  scan->add_flag("--odd-only", c_odd, "only odd moduli");
  scan->add_option("--cache-dir", c_cache_dir,
                   "cache directory (default $SQAVOID_CACHE_DIR)");
  scan->add_flag("--json", c_json, "JSON output");

  // construct
  auto* construct = app.add_subcommand("construct", "explicit avoiding sets");
  std::string k_method;
  std::uint64_t k_p = 0, k_q1 = 0, k_q2 = 0, k_m = 0;
  bool k_json = false;
  construct->add_option("--method", k_method,
                        "cohen | two-prime | p-square | ruzsa65 | product")
      ->required();
  construct->add_option("--p", k_p, "prime (cohen, p-square)");
  construct->add_option("--q1", k_q1, "larger prime = 3 mod 4 (two-prime)");
  construct->add_option("--q2", k_q2, "smaller prime = 3 mod 4 (two-prime)");
  construct->add_option("--m", k_m, "modulus (product)");
  construct->add_flag("--json", k_json, "JSON output");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form upper bounds");
  std::uint64_t b_m = 0;
  bool b_json = false;
  bounds->add_option("--m", b_m, "modulus")->required();
  bounds->add_flag("--json", b_json, "JSON output");

  // density
  auto* density = app.add_subcommand("density",
                                     "divisor-condition failure fractions");
  double d_x = 0;
  double d_eps = 0.5, d_scale = 3.0;
  std::string d_variant = "tail";
  bool d_csv = false, d_json = false, d_grid = false, d_synth = false;
  density->add_option("--x", d_x, "scan limit")->required();
  density->add_option("--eps", d_eps, "threshold exponent");
  density->add_option("--scale", d_scale, "grid step constant");
  density->add_option("--variant", d_variant, "tail | smooth");
  density->add_flag("--csv", d_csv, "CSV output");
  density->add_flag("--json", d_json, "JSON output");
  density->add_flag("--dump-grid", d_grid, "print the cutoff grid as JSON");
  density->add_flag("--synthetic", d_synth,
                    "formal x for grid arithmetic (with --dump-grid)");

  // tv
  auto* tv = app.add_subcommand(
      "tv", "total variation against the independent Poisson model");
  std::uint64_t t_x = 0;
  std::vector<std::string> t_windows;
  bool t_json = false;
  tv->add_option("--x", t_x, "enumeration limit")->required();
  tv->add_option("--window", t_windows,
                 "prime window lo:hi, primes = 3 mod 4 in (lo, hi]")
      ->required();
  tv->add_flag("--json", t_json, "JSON output");

  // table
  auto* table = app.add_subcommand("table", "CSV of searches and bounds");
  std::uint64_t t_from = 0, t_to = 0, t_nodes = 20'000'000;
  double t_seconds = 0;
  std::string t_cache_dir;
  table->add_option("--from", t_from, "first modulus")->required();
  table->add_option("--to", t_to, "last modulus")->required();
  table->add_option("--budget-nodes", t_nodes, "node budget per modulus");
  table->add_option("--budget-seconds", t_seconds, "wall clock cap per modulus");
  table->add_option("--cache-dir", t_cache_dir,
                    "cache directory (default $SQAVOID_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fputs(app.help().c_str(), stderr);
    return 64;
  }

  try {
    if (*search)
      return run_search(s_m, s_nodes, s_seconds, s_require_exact, s_json);
    if (*scan)
      return run_scan(c_from, c_to, c_nodes, c_seconds, c_squarefree, c_odd,
                      c_cache_dir, threads, c_json);
    if (*construct) return run_construct(k_method, k_p, k_q1, k_q2, k_m, k_json);
    if (*bounds) return run_bounds(b_m, b_json);
    if (*density)
      return run_density(d_x, d_eps, d_scale, d_variant, threads, d_csv, d_json,
                         d_grid, d_synth);
    if (*tv) return run_tv(t_x, t_windows, t_json);
    if (*table)
      return run_table(t_from, t_to, t_nodes, t_seconds, t_cache_dir, threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
