#include "sqavoid/search.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <cstdio>
#include <filesystem>

#include "sqavoid/bounds.hpp"
#include "sqavoid/residues.hpp"
#include "oracles.hpp"

using namespace sqavoid;

TEST_CASE("worked searches") {
  auto r7 = max_avoiding(7);
  CHECK(r7.best_size == 1);
  CHECK(r7.exact);

  auto r5 = max_avoiding(5);
  CHECK(r5.best_size == 2);
  CHECK(r5.exact);
  CHECK(is_avoiding(r5.witness, 5));

  auto r9 = max_avoiding(9);
  CHECK(r9.best_size == 3);
  CHECK(r9.exact);
  CHECK(is_avoiding(r9.witness, 9));

  auto r65 = max_avoiding(65);
  CHECK(r65.best_size == 7);
  CHECK(r65.exact);
  CHECK(is_avoiding(r65.witness, 65));
}

TEST_CASE("degenerate moduli") {
  auto r1 = max_avoiding(1);
  CHECK(r1.best_size == 1);
  CHECK(r1.witness == std::vector<std::uint64_t>{0});
  CHECK(r1.exact);
  CHECK_FALSE(r1.note.empty());

  auto r2 = max_avoiding(2);
  CHECK(r2.best_size == 1);
  CHECK(r2.exact);

  CHECK_THROWS_AS(max_avoiding(0), std::invalid_argument);
  CHECK_THROWS_AS(max_avoiding((std::uint64_t(1) << 17) + 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(max_avoiding(5, SearchBudget{0, 0}), std::invalid_argument);
}

TEST_CASE("branch and bound agrees with the subset-enumeration oracle") {
  for (std::uint64_t m = 1; m <= 120; ++m) {
    const auto r = max_avoiding(m);
    REQUIRE(r.exact);
    REQUIRE(r.best_size == oracle::max_avoiding_size(m));
  }
}

TEST_CASE("even reduction: searching m and m/2 agree for m = 2 mod 4") {
  // The even graph is a blown-up copy of the odd one, so a few odd parts
  // with large cliques (125 = 5^3) exhaust any sane budget on the even
  // side; those still must bracket the exact odd value.
  const SearchBudget budget{5'000'000, 0};
  int verified = 0;
  for (std::uint64_t m = 2; m <= 400; m += 4) {
    const auto full = max_avoiding(m, budget);
    const auto half = max_avoiding(odd_part_reduction(m), budget);
    REQUIRE(half.exact);
    if (full.exact) {
      ++verified;
      CHECK(full.best_size == half.best_size);
    } else {
      CHECK(full.lower_bound <= half.best_size);
      CHECK(half.best_size <= full.upper_bound);
    }
  }
  CHECK(verified >= 90);
}

TEST_CASE("search results stay under the analytic bounds") {
  for (std::uint64_t m = 2; m <= 500; ++m) {
    const auto f = factorize(m);
    const auto r = max_avoiding(m, SearchBudget{2'000'000, 0});
    if (!r.exact) continue;
    const auto report = bound_report(f);
    CHECK(static_cast<double>(r.best_size) <= report.best + 1e-9);
    if (const auto charsum = character_sum_bound(f))
      CHECK(static_cast<double>(r.best_size) <= *charsum);
  }
}

TEST_CASE("budgeted searches are deterministic and sound") {
  const SearchBudget tiny{50, 0};
  const auto a = max_avoiding(1155, tiny);
  const auto b = max_avoiding(1155, tiny);
  CHECK(a.best_size == b.best_size);
  CHECK(a.exact == b.exact);
  CHECK(a.witness == b.witness);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK_FALSE(a.exact);
  CHECK(a.lower_bound <= a.upper_bound);
  CHECK(is_avoiding(a.witness, 1155));

  const auto c = max_avoiding(997);
  const auto d = max_avoiding(997);
  CHECK(c.best_size == d.best_size);
  CHECK(c.exact);
  CHECK(c.upper_bound == c.best_size);
  CHECK(c.nodes_explored == d.nodes_explored);
}

TEST_CASE("inexact upper bound respects the analytic clamp") {
  const auto r = max_avoiding(1155, SearchBudget{100, 0});
  REQUIRE_FALSE(r.exact);
  const auto report = bound_report(factorize(1155));
  CHECK(static_cast<double>(r.upper_bound) <= report.best + 1e-9);
  CHECK(r.lower_bound <= r.upper_bound);
}

TEST_CASE("a huge 3-mod-4 prime factor forces a small maximum") {
  // Splitting at the big prime bounds the maximum by m/q <= m^eps; these
  // graphs have tiny cliques, so the searches finish fast.
  const double eps = 0.45;
  int verified = 0;
  for (std::uint64_t m = 3; m <= 5000; ++m) {
    const auto f = factorize(m);
    if (!has_huge_q3_factor(f, eps)) continue;
    const auto r = max_avoiding(m, SearchBudget{3'000'000, 0});
    if (!r.exact) continue;
    ++verified;
    CHECK(static_cast<double>(r.best_size) <=
          std::pow(static_cast<double>(m), eps));
  }
  CHECK(verified >= 1500);
}

TEST_CASE("scan table over a small range") {
  auto records = scan_table(3, 50, SearchBudget{}, ScanFilters{true, false});
  CHECK(records.size() == 29);  // squarefree m in [3, 50]
  for (const auto& rec : records) {
    REQUIRE(rec.ok);
    CHECK(rec.result.exact);
    CHECK(factorize(rec.m).squarefree());
  }

  auto single = scan_table(7, 7, SearchBudget{});
  REQUIRE(single.size() == 1);
  CHECK(single[0].result.best_size == 1);

  CHECK(scan_table(10, 3, SearchBudget{}).empty());

  auto odd = scan_table(3, 20, SearchBudget{}, ScanFilters{false, true});
  for (const auto& rec : odd) CHECK(rec.m % 2 == 1);
}

TEST_CASE("scan table propagates per-modulus budget exhaustion, not errors") {
  auto records = scan_table(1150, 1156, SearchBudget{100, 0});
  for (const auto& rec : records) {
    REQUIRE(rec.ok);
    CHECK(is_avoiding(rec.result.witness, rec.m));
  }
}

TEST_CASE("result cache round trip and warm rerun") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "sqavoid_cache_test";
  fs::create_directories(dir);
  const auto file = (dir / "search_cache.csv").string();
  fs::remove(file);

  {
    ResultCache cache(file);
    auto cold = scan_table(3, 30, SearchBudget{}, {}, &cache);
    ResultCache warm(file);
    auto reread = scan_table(3, 30, SearchBudget{}, {}, &warm);
    REQUIRE(cold.size() == reread.size());
    for (std::size_t i = 0; i < cold.size(); ++i) {
      CHECK(cold[i].result.m == reread[i].result.m);
      CHECK(cold[i].result.best_size == reread[i].result.best_size);
      CHECK(cold[i].result.exact == reread[i].result.exact);
      CHECK(cold[i].result.upper_bound == reread[i].result.upper_bound);
      CHECK(cold[i].result.witness == reread[i].result.witness);
      // Cache hits never re-run the solver.
      CHECK(reread[i].result.nodes_explored == 0);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("cache line format round trips") {
  SearchResult r;
  r.m = 65;
  r.best_size = 7;
  r.lower_bound = 7;
  r.upper_bound = 7;
  r.exact = true;
  r.witness = {0, 2, 5, 22, 24, 43, 46};
  const auto line = ResultCache::format_line(r);
  CHECK(line == "65,7,1,7,0-2-5-22-24-43-46");
  const auto parsed = ResultCache::parse_line(line);
  REQUIRE(parsed.has_value());
  CHECK(parsed->m == 65);
  CHECK(parsed->best_size == 7);
  CHECK(parsed->exact);
  CHECK(parsed->upper_bound == 7);
  CHECK(parsed->witness == r.witness);

  CHECK_FALSE(ResultCache::parse_line("garbage").has_value());
  CHECK_FALSE(ResultCache::parse_line("").has_value());
  CHECK_FALSE(ResultCache::parse_line("65,7,1,7,0-2").has_value());
}
