#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqavoid/numtheory.hpp"

namespace sqavoid {

/// Node-count budget (portable, deterministic) with an optional wall-clock
/// cap; exceeding either leaves the result inexact.
struct SearchBudget {
  std::uint64_t max_nodes = 20'000'000;
  double max_seconds = 0;  // 0 disables the wall-clock cap

  friend bool operator==(const SearchBudget&, const SearchBudget&) = default;
};

struct SearchResult {
  std::uint64_t m = 0;
  std::uint32_t best_size = 0;
  std::vector<std::uint64_t> witness;  // sorted; always a valid avoiding set
  std::uint32_t lower_bound = 0;
  std::uint32_t upper_bound = 0;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0;
  std::string note;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Exact (or budget-limited) maximum avoiding set size by branch-and-bound
/// maximum clique on the avoidance graph.  Translation symmetry pins 0 into
/// the set and restricts the search to the neighbourhood of 0; the incumbent
/// is seeded from the best applicable construction.  Deterministic for a
/// fixed node budget.  m <= 2^17; a zero budget is rejected.
SearchResult max_avoiding(std::uint64_t m, const SearchBudget& budget = {});

struct ScanFilters {
  bool squarefree_only = false;
  bool odd_only = false;

  friend bool operator==(const ScanFilters&, const ScanFilters&) = default;
};

struct ScanRecord {
  std::uint64_t m = 0;
  bool ok = false;
  std::string error;
  SearchResult result;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

/// Append-only cache of search results, one line per modulus:
///   m,best_size,exact,upper_bound,witness-as-dash-separated-integers
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  /// Directory from the SQAVOID_CACHE_DIR environment variable; empty when
  /// unset.
  static std::string directory_from_env();

  std::optional<SearchResult> lookup(std::uint64_t m) const;
  void append(const SearchResult& r);
  const std::string& path() const { return path_; }

  static std::string format_line(const SearchResult& r);
  static std::optional<SearchResult> parse_line(const std::string& line);

 private:
  struct Impl;
  std::string path_;
  std::shared_ptr<Impl> impl_;
};

/// One search per modulus in [from, to] passing the filters, farmed out to a
/// worker pool; per-modulus failures become failure records rather than
/// aborting the scan.  Cached exact results are not recomputed; fresh
/// results are appended through a single writer.
std::vector<ScanRecord> scan_table(std::uint64_t from, std::uint64_t to,
                                   const SearchBudget& budget,
                                   const ScanFilters& filters = {},
                                   ResultCache* cache = nullptr,
                                   unsigned threads = 0);

}  // namespace sqavoid
