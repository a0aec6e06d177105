#include "sqavoid/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace sqavoid {

namespace {

using u64 = std::uint64_t;

void require_x_scale(double x) {
  if (!(x >= 16))
    throw std::invalid_argument("divisor conditions need x >= 16");
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must lie in (0, 1]");
}

}  // namespace

std::string to_string(TailVariant v) {
  return v == TailVariant::tail_product ? "tail" : "smooth";
}

bool small_powerful_part(const Factorization& f, double x) {
  require_x_scale(x);
  return static_cast<double>(powerful_part(f)) <= std::log(x);
}

bool few_prime_divisors(const Factorization& f, double x) {
  require_x_scale(x);
  return static_cast<double>(omega(f)) <= 2.0 * std::log(std::log(x));
}

std::optional<DominantPrime> find_dominant_q3(const Factorization& f, double x,
                                              double eps, TailVariant variant) {
  require_eps(eps);
  std::vector<u64> qlist;
  for (const auto& pp : f.factors) {
    if (pp.exponent == 1 && pp.prime % 4 == 3) qlist.push_back(pp.prime);
  }
  std::sort(qlist.rbegin(), qlist.rend());
  const double cut = std::pow(x, eps);
  for (std::size_t j = 0; j < qlist.size(); j += 2) {
    const u64 q = qlist[j];
    if (!(static_cast<double>(q) > cut)) break;  // descending list
    u64 smooth = 1;
    if (variant == TailVariant::tail_product) {
      for (std::size_t i = j + 1; i < qlist.size(); ++i) smooth *= qlist[i];
    } else {
      smooth = smooth_part_3mod4(f, static_cast<double>(q));
    }
    if (static_cast<double>(q) >
        static_cast<double>(smooth) * static_cast<double>(smooth))
      return DominantPrime{q, smooth};
  }
  return std::nullopt;
}

bool has_dominant_q3(const Factorization& f, double x, double eps,
                     TailVariant variant) {
  return find_dominant_q3(f, x, eps, variant).has_value();
}

PoissonGrid build_grid(double x, double eps, double scale, bool synthetic) {
  require_eps(eps);
  if (!(scale > 0)) throw std::invalid_argument("build_grid: scale must be > 0");
  if (!(x > 1)) throw std::invalid_argument("build_grid: x must exceed 1");

  PoissonGrid g;
  g.x = x;
  g.eps = eps;
  g.scale = scale;
  g.synthetic = synthetic;

  const double log_inv_eps = std::log(1.0 / eps);
  g.step = scale * std::pow(log_inv_eps, 0.1);
  if (!(g.step > 1.0))
    throw std::domain_error("build_grid: step <= 1 (eps too close to 1)");

  g.levels = static_cast<int>(
      std::floor(log_inv_eps / (2.0 * std::log(g.step))));
  if (g.levels < 1) throw std::domain_error("build_grid: no windows fit");

  const double log_y0 = std::sqrt(eps) * std::log(x);
  for (int j = 0; j <= g.levels; ++j)
    g.cutoffs.push_back(std::exp(log_y0 / std::pow(g.step, j)));
  if (!synthetic && g.cutoffs.back() < 3.0)
    throw std::domain_error("build_grid: smallest cutoff below 3");

  if (!synthetic) {
    for (int j = 1; j <= g.levels; ++j) {
      auto t = primes_in_class(g.cutoffs[j], g.cutoffs[j - 1],
                               ResidueClass::three, "T" + std::to_string(j));
      g.expected.push_back(prime_reciprocal_sum(t));
      g.windows.push_back(std::move(t));
    }
  }
  return g;
}

bool smooth_parts_bounded(const Factorization& f, const PoissonGrid& grid) {
  for (double y : grid.cutoffs) {
    const double d = static_cast<double>(smooth_part_3mod4(f, y));
    if (!(d <= std::pow(y, grid.step / 2.0))) return false;
  }
  return true;
}

bool has_alternating_pattern(std::span<const unsigned> counts) {
  if (counts.size() < 4) return false;
  for (std::size_t i = 0; i + 3 < counts.size(); ++i) {
    if (counts[i] == 1 && counts[i + 1] == 0 && counts[i + 2] == 1 &&
        counts[i + 3] == 0)
      return true;
  }
  return false;
}

double poisson_window_probability(std::span<const double, 4> lambdas) {
  const double sum = lambdas[0] + lambdas[1] + lambdas[2] + lambdas[3];
  return lambdas[0] * lambdas[2] * std::exp(-sum);
}

std::vector<unsigned> omega_vector(const Factorization& f,
                                   std::span<const PrimeClassSet> windows) {
  // The windows must be pairwise disjoint.
  std::size_t total = 0;
  std::vector<u64> all;
  for (const auto& w : windows) {
    total += w.primes.size();
    all.insert(all.end(), w.primes.begin(), w.primes.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("omega_vector: windows overlap");
  (void)total;

  std::vector<unsigned> counts(windows.size(), 0);
  for (const auto& pp : f.factors) {
    for (std::size_t j = 0; j < windows.size(); ++j) {
      if (std::binary_search(windows[j].primes.begin(),
                             windows[j].primes.end(), pp.prime))
        ++counts[j];
    }
  }
  return counts;
}

double tv_distance_empirical(u64 x, std::span<const PrimeClassSet> windows) {
  if (x < 2) throw std::invalid_argument("tv_distance_empirical: x must be >= 2");
  if (x > 100'000'000)
    throw std::invalid_argument("tv_distance_empirical: x too large");
  if (windows.empty() || windows.size() > 8)
    throw std::invalid_argument("tv_distance_empirical: need 1..8 windows");
  std::vector<u64> all;
  for (const auto& w : windows) {
    if (w.primes.empty())
      throw std::invalid_argument(
          "tv_distance_empirical: empty window (degenerate Poisson)");
    if (w.primes.back() > x)
      throw std::invalid_argument("tv_distance_empirical: window prime > x");
    all.insert(all.end(), w.primes.begin(), w.primes.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("tv_distance_empirical: windows overlap");

  // One byte of the key per window; distinct prime divisors never reach 255.
  std::vector<u64> key(x + 1, 0);
  for (std::size_t j = 0; j < windows.size(); ++j) {
    const unsigned shift = 8 * static_cast<unsigned>(j);
    for (u64 p : windows[j].primes) {
      for (u64 mult = p; mult <= x; mult += p) key[mult] += u64(1) << shift;
    }
  }
  std::map<u64, u64> histogram;
  for (u64 m = 1; m <= x; ++m) ++histogram[key[m]];

  std::vector<double> lambdas;
  unsigned maxcount = 0;
  for (const auto& w : windows) lambdas.push_back(prime_reciprocal_sum(w));
  for (const auto& [k, cnt] : histogram) {
    for (std::size_t j = 0; j < windows.size(); ++j)
      maxcount = std::max(maxcount, unsigned((k >> (8 * j)) & 0xff));
  }
  // Poisson pmf tables.
  std::vector<std::vector<double>> pmf(windows.size());
  for (std::size_t j = 0; j < windows.size(); ++j) {
    pmf[j].resize(maxcount + 1);
    pmf[j][0] = std::exp(-lambdas[j]);
    for (unsigned k = 1; k <= maxcount; ++k)
      pmf[j][k] = pmf[j][k - 1] * lambdas[j] / k;
  }

  // TV over the full lattice: the observed points contribute |emp - poi|,
  // everything else contributes its Poisson mass, which totals one minus
  // the Poisson mass of the observed points.  The off-support tail is thus
  // handled exactly.
  double observed_abs = 0, observed_poisson = 0;
  const double total = static_cast<double>(x);
  for (const auto& [k, cnt] : histogram) {
    double poi = 1.0;
    for (std::size_t j = 0; j < windows.size(); ++j)
      poi *= pmf[j][(k >> (8 * j)) & 0xff];
    observed_abs += std::abs(static_cast<double>(cnt) / total - poi);
    observed_poisson += poi;
  }
  return 0.5 * (observed_abs + (1.0 - observed_poisson));
}

bool has_balanced_divisor_counts(const Factorization& f, double x,
                                 unsigned grid_points) {
  require_x_scale(x);
  if (f.m < 3) return true;
  if (grid_points < 2) grid_points = 2;
  const double threshold = std::pow(std::log(std::log(x)), 2.0 / 3.0);

  std::vector<u64> class1, class3;
  for (const auto& pp : f.factors) {
    if (pp.prime % 4 == 1) class1.push_back(pp.prime);
    if (pp.prime % 4 == 3) class3.push_back(pp.prime);
  }

  const double lo = std::log(3.0), hi = std::log(static_cast<double>(f.m));
  for (unsigned i = 0; i < grid_points; ++i) {
    const double t =
        std::exp(lo + (hi - lo) * i / static_cast<double>(grid_points - 1));
    const double reference = 0.5 * std::log(std::log(t));
    for (const auto* cls : {&class1, &class3}) {
      const auto count = static_cast<double>(
          std::upper_bound(cls->begin(), cls->end(),
                           static_cast<u64>(t)) -
          cls->begin());
      if (!(std::abs(count - reference) < threshold)) return false;
    }
  }
  return true;
}

double DensityReport::frac_fail_small_powerful() const {
  return total ? static_cast<double>(fail_small_powerful) / total : 0.0;
}
double DensityReport::frac_fail_few_divisors() const {
  return total ? static_cast<double>(fail_few_divisors) / total : 0.0;
}
double DensityReport::frac_fail_dominant() const {
  return total ? static_cast<double>(fail_dominant) / total : 0.0;
}
double DensityReport::frac_fail_smooth_bound() const {
  return total ? static_cast<double>(fail_smooth_bound) / total : 0.0;
}
double DensityReport::frac_alternating_hits() const {
  return total ? static_cast<double>(alternating_hits) / total : 0.0;
}

namespace {

struct Tally {
  u64 total = 0;
  u64 fail_small_powerful = 0;
  u64 fail_few_divisors = 0;
  u64 fail_dominant = 0;
  u64 fail_smooth_bound = 0;
  u64 alternating_hits = 0;

  void merge(const Tally& o) {
    total += o.total;
    fail_small_powerful += o.fail_small_powerful;
    fail_few_divisors += o.fail_few_divisors;
    fail_dominant += o.fail_dominant;
    fail_smooth_bound += o.fail_smooth_bound;
    alternating_hits += o.alternating_hits;
  }
};

void tally_one(const Factorization& f, double x, double eps, TailVariant v,
               const PoissonGrid* grid, Tally& t) {
  ++t.total;
  if (!small_powerful_part(f, x)) ++t.fail_small_powerful;
  if (!few_prime_divisors(f, x)) ++t.fail_few_divisors;
  if (!has_dominant_q3(f, x, eps, v)) ++t.fail_dominant;
  if (grid) {
    if (!smooth_parts_bounded(f, *grid)) ++t.fail_smooth_bound;
    // Window counts straight off the cutoffs: a prime divisor q = 3 (mod 4)
    // lands in window j when cutoffs[j] < q <= cutoffs[j-1].
    unsigned counts[64] = {0};
    const int levels = grid->levels;
    for (const auto& pp : f.factors) {
      if (pp.prime % 4 != 3) continue;
      const double q = static_cast<double>(pp.prime);
      if (!(q <= grid->cutoffs[0])) continue;
      for (int j = 1; j <= levels; ++j) {
        if (q > grid->cutoffs[j]) {
          ++counts[j - 1];
          break;
        }
      }
    }
    if (has_alternating_pattern(
            std::span<const unsigned>(counts, static_cast<std::size_t>(levels))))
      ++t.alternating_hits;
  }
}

}  // namespace

DensityReport density_scan(u64 x, double eps, double scale, TailVariant variant,
                           unsigned threads) {
  if (x < 16 || x > 100'000'000)
    throw std::invalid_argument("density_scan: x must lie in [16, 1e8]");
  require_eps(eps);
  if (!(scale > 0)) throw std::invalid_argument("density_scan: scale must be > 0");

  DensityReport rep;
  rep.x = x;
  rep.eps = eps;
  rep.scale = scale;
  rep.variant = variant;
  rep.failure_scale = std::exp(-std::pow(std::log(1.0 / eps), 0.1));

  PoissonGrid grid;
  bool grid_valid = true;
  try {
    grid = build_grid(static_cast<double>(x), eps, scale);
  } catch (const std::domain_error&) {
    grid_valid = false;
  }
  rep.grid_valid = grid_valid;
  rep.levels = grid_valid ? grid.levels : 0;
  // Window counts beyond 64 levels would overflow the tally buffer; the
  // level count is ~ log(1/eps)/loglog(1/eps), far below that.
  if (grid_valid && grid.levels > 64)
    throw std::invalid_argument("density_scan: too many windows");

  unsigned nw = threads ? threads : std::thread::hardware_concurrency();
  if (nw == 0) nw = 1;
  nw = std::min<unsigned>(nw, 8);

  const double xd = static_cast<double>(x);
  Tally total;
  if (nw <= 1 || x < (u64(1) << 22)) {
    factorize_range(1, x, [&](const Factorization& f) {
      tally_one(f, xd, eps, variant, grid_valid ? &grid : nullptr, total);
    });
  } else {
    std::vector<Tally> locals(nw);
    std::vector<std::thread> pool;
    const u64 chunk = (x + nw - 1) / nw;
    for (unsigned w = 0; w < nw; ++w) {
      const u64 lo = 1 + w * chunk;
      const u64 hi = std::min(x, lo + chunk - 1);
      if (lo > x) break;
      pool.emplace_back([&, lo, hi, w] {
        factorize_range(lo, hi, [&, w](const Factorization& f) {
          tally_one(f, xd, eps, variant, grid_valid ? &grid : nullptr,
                    locals[w]);
        });
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& l : locals) total.merge(l);
  }

  rep.total = total.total;
  rep.fail_small_powerful = total.fail_small_powerful;
  rep.fail_few_divisors = total.fail_few_divisors;
  rep.fail_dominant = total.fail_dominant;
  rep.fail_smooth_bound = total.fail_smooth_bound;
  rep.alternating_hits = total.alternating_hits;
  return rep;
}

}  // namespace sqavoid
