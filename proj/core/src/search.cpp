#include "sqavoid/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>

#include "sqavoid/bounds.hpp"
#include "sqavoid/constructions.hpp"
#include "sqavoid/residues.hpp"

namespace sqavoid {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using Clock = std::chrono::steady_clock;

// Branch-and-bound maximum clique on the subgraph induced by the
// neighbourhood of 0, with greedy sequential colouring as the bound and
// descending-colour branching.  Vertices of equal colour are branched
// smallest residue first.  Bit-parallel candidate sets.
class CliqueSolver {
 public:
  CliqueSolver(const std::vector<u64>& bad, u64 m,
               const std::vector<u32>& candidates)
      : n_(static_cast<int>(candidates.size())),
        words_(static_cast<std::size_t>((n_ + 63) / 64)) {
    const auto diff_bad = [&](u32 a, u32 b) {
      const u64 d = a >= b ? a - b : a + m - b;
      return ((bad[d >> 6] >> (d & 63)) & 1) != 0;
    };
    // Order: induced degree descending, residue ascending.
    std::vector<int> degree(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (diff_bad(candidates[i], candidates[j])) {
          ++degree[i];
          ++degree[j];
        }
      }
    }
    std::vector<int> perm(n_);
    for (int i = 0; i < n_; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      if (degree[a] != degree[b]) return degree[a] > degree[b];
      return candidates[a] < candidates[b];
    });
    residue_.resize(n_);
    for (int pos = 0; pos < n_; ++pos) residue_[pos] = candidates[perm[pos]];
    adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (int pos = 0; pos < n_; ++pos) {
      u64* row = &adj_[static_cast<std::size_t>(pos) * words_];
      for (int qos = 0; qos < n_; ++qos) {
        if (qos != pos && diff_bad(residue_[pos], residue_[qos]))
          row[qos >> 6] |= u64(1) << (qos & 63);
      }
    }
  }

  // initial_best is the incumbent subgraph clique size (possibly 0); only
  // strictly larger cliques are recorded.
  void solve(int initial_best, u64 max_nodes, double max_seconds) {
    best_ = initial_best;
    max_nodes_ = max_nodes;
    deadline_valid_ = max_seconds > 0;
    if (deadline_valid_)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(max_seconds));
    if (n_ == 0) return;
    current_.assign(n_, -1);
    std::vector<u64> all(words_, 0);
    for (int i = 0; i < n_; ++i) all[i >> 6] |= u64(1) << (i & 63);
    expand(all.data(), 0, 0);
  }

  bool aborted() const { return aborted_; }
  u64 nodes() const { return nodes_; }
  int root_colors() const { return root_colors_; }
  bool improved() const { return !best_clique_.empty(); }
  std::vector<u32> best_residues() const {
    std::vector<u32> out;
    for (int v : best_clique_) out.push_back(residue_[v]);
    return out;
  }

 private:
  struct Level {
    std::vector<u64> pool, child, scratch, strip;
    std::vector<int> order, colors;
  };

  Level& level_at(int depth) {
    while (static_cast<int>(levels_.size()) <= depth) {
      Level level;
      level.pool.assign(words_, 0);
      level.child.assign(words_, 0);
      level.scratch.assign(words_, 0);
      level.strip.assign(words_, 0);
      level.order.resize(n_);
      level.colors.resize(n_);
      levels_.push_back(std::move(level));
    }
    return levels_[depth];
  }

  static int first_bit(const u64* bits, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) {
      if (bits[w]) return static_cast<int>(w * 64 + __builtin_ctzll(bits[w]));
    }
    return -1;
  }

  // Greedy sequential colouring; fills order/colors grouped by ascending
  // colour, each class sorted by residue descending so that backwards
  // iteration branches smallest residue first.
  int color_sort(const u64* p, Level& level, int& color_count) {
    u64* copy = level.scratch.data();
    u64* strip = level.strip.data();
    std::copy(p, p + words_, copy);
    int idx = 0;
    int c = 0;
    int v = first_bit(copy, words_);
    while (v >= 0) {
      ++c;
      std::copy(copy, copy + words_, strip);
      const int class_begin = idx;
      while (v >= 0) {
        copy[v >> 6] &= ~(u64(1) << (v & 63));
        strip[v >> 6] &= ~(u64(1) << (v & 63));
        const u64* row = &adj_[static_cast<std::size_t>(v) * words_];
        for (std::size_t w = 0; w < words_; ++w) strip[w] &= ~row[w];
        level.order[idx] = v;
        level.colors[idx] = c;
        ++idx;
        v = first_bit(strip, words_);
      }
      std::sort(level.order.begin() + class_begin, level.order.begin() + idx,
                [&](int a, int b) { return residue_[a] > residue_[b]; });
      v = first_bit(copy, words_);
    }
    color_count = c;
    return idx;
  }

  void expand(const u64* p, int rsize, int depth) {
    Level& level = level_at(depth);
    level_at(depth + 1);  // pre-create so recursion never moves `level`
    int color_count = 0;
    const int count = color_sort(p, level, color_count);
    if (depth == 0) root_colors_ = color_count;

    std::copy(p, p + words_, level.pool.begin());
    for (int i = count - 1; i >= 0; --i) {
      const int c = level.colors[i];
      if (rsize + c <= best_) return;  // all remaining colours are lower
      if (++nodes_ > max_nodes_ ||
          (deadline_valid_ && (nodes_ & 4095) == 0 && Clock::now() > deadline_)) {
        aborted_ = true;
        return;
      }
      const int v = level.order[i];
      level.pool[v >> 6] &= ~(u64(1) << (v & 63));
      const u64* row = &adj_[static_cast<std::size_t>(v) * words_];
      bool child_empty = true;
      for (std::size_t w = 0; w < words_; ++w) {
        level.child[w] = level.pool[w] & row[w];
        child_empty &= level.child[w] == 0;
      }
      current_[rsize] = v;
      if (child_empty) {
        if (rsize + 1 > best_) {
          best_ = rsize + 1;
          best_clique_.assign(current_.begin(), current_.begin() + rsize + 1);
        }
      } else {
        expand(level.child.data(), rsize + 1, depth + 1);
        if (aborted_) return;
      }
    }
  }

  int n_;
  std::size_t words_;
  std::vector<u64> adj_;
  std::vector<u32> residue_;
  std::deque<Level> levels_;  // stable addresses while growing
  std::vector<int> current_;
  std::vector<int> best_clique_;
  int best_ = 0;
  int root_colors_ = 0;
  u64 nodes_ = 0;
  u64 max_nodes_ = 0;
  bool deadline_valid_ = false;
  Clock::time_point deadline_;
  bool aborted_ = false;
};

// Best applicable construction, used to seed the incumbent.
ConstructionOutput best_seed(const Factorization& f) {
  ConstructionOutput seed = product_set(f);
  if (f.factors.size() == 1 && f.factors[0].exponent == 2) {
    auto grid = p_square_set(f.factors[0].prime);
    if (grid.set.size() > seed.set.size()) seed = std::move(grid);
  }
  if (f.m == 65) {
    auto fixed = ruzsa65();
    if (fixed.set.size() > seed.set.size()) seed = std::move(fixed);
  }
  return seed;
}

u32 analytic_upper(const Factorization& f) {
  const BoundReport report = bound_report(f);
  const double floor_best = std::floor(report.best);
  if (floor_best < 1) return 1;
  if (floor_best > 4e9) return 0xffffffffu;
  return static_cast<u32>(floor_best);
}

}  // namespace

SearchResult max_avoiding(u64 m, const SearchBudget& budget) {
  if (m < 1) throw std::invalid_argument("max_avoiding: m must be positive");
  if (m > (u64(1) << 17))
    throw std::invalid_argument("max_avoiding: m above the graph bound 2^17");
  if (budget.max_nodes == 0)
    throw std::invalid_argument("max_avoiding: zero budget rejected");

  const auto start = Clock::now();
  SearchResult result;
  result.m = m;

  if (m == 1) {
    result.best_size = result.lower_bound = result.upper_bound = 1;
    result.witness = {0};
    result.exact = true;
    result.note = "m=1 answered by convention";
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
  }

  const Factorization f = factorize(m);
  ConstructionOutput seed = best_seed(f);

  ResidueSet rs(m, ResidueMode::enumerated);
  std::vector<u64> bad((m + 63) / 64, 0);
  std::vector<u32> candidates;
  for (u64 d = 1; d < m; ++d) {
    if (!rs.contains(d) && !rs.contains(m - d)) {
      bad[d >> 6] |= u64(1) << (d & 63);
      candidates.push_back(static_cast<u32>(d));
    }
  }

  CliqueSolver solver(bad, m, candidates);
  solver.solve(static_cast<int>(seed.set.size()) - 1, budget.max_nodes,
               budget.max_seconds);

  result.nodes_explored = solver.nodes();
  result.exact = !solver.aborted();
  if (solver.improved()) {
    auto clique = solver.best_residues();
    result.witness.assign(clique.begin(), clique.end());
    result.witness.push_back(0);
    std::sort(result.witness.begin(), result.witness.end());
  } else {
    result.witness = seed.set;
  }
  result.best_size = static_cast<u32>(result.witness.size());
  result.lower_bound = result.best_size;

  if (result.exact) {
    result.upper_bound = result.best_size;
  } else {
    const u32 color_ub = static_cast<u32>(solver.root_colors()) + 1;
    result.upper_bound =
        std::max(result.best_size, std::min(color_ub, analytic_upper(f)));
  }

  if (!is_avoiding(result.witness, rs))
    throw std::logic_error("max_avoiding: witness failed validation");
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

std::vector<ScanRecord> scan_table(u64 from, u64 to, const SearchBudget& budget,
                                   const ScanFilters& filters,
                                   ResultCache* cache, unsigned threads) {
  if (to >= from && to > (u64(1) << 17))
    throw std::invalid_argument("scan_table: range above the graph bound 2^17");
  std::vector<u64> moduli;
  for (u64 m = std::max<u64>(from, 1); from <= to && m <= to; ++m) {
    if (filters.odd_only && m % 2 == 0) continue;
    if (filters.squarefree_only && !factorize(m).squarefree()) continue;
    moduli.push_back(m);
  }
  std::vector<ScanRecord> records(moduli.size());

  unsigned nw = threads ? threads : std::thread::hardware_concurrency();
  if (nw == 0) nw = 1;
  nw = std::min<unsigned>(nw, 16);
  if (!moduli.empty())
    nw = std::min<unsigned>(nw, static_cast<unsigned>(moduli.size()));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= moduli.size()) break;
      const u64 m = moduli[idx];
      ScanRecord& record = records[idx];
      record.m = m;
      if (cache) {
        auto hit = cache->lookup(m);
        if (hit && hit->exact) {
          record.ok = true;
          record.result = std::move(*hit);
          continue;
        }
      }
      try {
        record.result = max_avoiding(m, budget);
        record.ok = true;
        if (cache) cache->append(record.result);
      } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
      }
    }
  };

  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace sqavoid
