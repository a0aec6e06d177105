#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqavoid/numtheory.hpp"

namespace sqavoid {

/// Which smooth-part notion certifies a dominant prime: the tail product of
/// the smaller exponent-one primes = 3 (mod 4), or the full 3-mod-4 smooth
/// part including prime powers.  The two differ only on moduli with a
/// nontrivial powerful part.
enum class TailVariant { tail_product, smooth_part };

std::string to_string(TailVariant v);

/// Powerful part at most log x.
bool small_powerful_part(const Factorization& f, double x);
/// At most 2 log log x distinct prime divisors.  Requires x >= 16.
bool few_prime_divisors(const Factorization& f, double x);

struct DominantPrime {
  std::uint64_t prime = 0;   // q, at an odd position of the descending list
  std::uint64_t smooth = 0;  // the certified smooth part S with q > S^2
};

/// Scans the primes q1 > q2 > ... = 3 (mod 4) dividing m / powerful_part(m)
/// at odd positions for one with q > x^eps and q > S^2, where S is the
/// variant's smooth part below q.  Returns the first (largest) hit.
/// eps must lie in (0, 1].
std::optional<DominantPrime> find_dominant_q3(const Factorization& f, double x,
                                              double eps, TailVariant variant);

/// Condition form of find_dominant_q3.
bool has_dominant_q3(const Factorization& f, double x, double eps,
                     TailVariant variant);

/// Geometric cutoff grid for prime-divisor statistics: cutoffs
/// y_0 = x^sqrt(eps), y_j = y_0^(1/step^j), step = scale *
/// (log 1/eps)^(1/10), with levels = floor(log(1/eps) / (2 log step)).
/// windows[j-1] holds the primes = 3 (mod 4) in (y_j, y_{j-1}] and
/// expected[j-1] their reciprocal sum.  In synthetic mode x is a formal
/// parameter: the arithmetic is produced but no sieving happens and the
/// smallest-cutoff check is skipped.
struct PoissonGrid {
  double x = 0;
  double eps = 0;
  double scale = 0;  // the constant in the step definition
  double step = 0;
  int levels = 0;  // number of windows
  std::vector<double> cutoffs;          // y_0 .. y_levels
  std::vector<PrimeClassSet> windows;   // empty in synthetic mode
  std::vector<double> expected;         // reciprocal sums per window
  bool synthetic = false;

  friend bool operator==(const PoissonGrid&, const PoissonGrid&) = default;
};

PoissonGrid build_grid(double x, double eps, double scale,
                       bool synthetic = false);

/// Condition (smooth parts bounded): for every cutoff y_j, the 3-mod-4
/// smooth part below y_j is at most y_j^(step/2).
bool smooth_parts_bounded(const Factorization& f, const PoissonGrid& grid);

/// True when the window counts contain 1,0,1,0 at consecutive positions.
/// Vectors shorter than 4 never match.
bool has_alternating_pattern(std::span<const unsigned> counts);

/// P(Z1=1, Z2=0, Z3=1, Z4=0) for independent Poisson variables with the
/// given means: lambda[0]*lambda[2]*exp(-sum).
double poisson_window_probability(std::span<const double, 4> lambdas);

/// Counts of distinct prime divisors of m inside each window; the windows
/// must be pairwise disjoint.
std::vector<unsigned> omega_vector(const Factorization& f,
                                   std::span<const PrimeClassSet> windows);

/// Exact total variation distance between the joint distribution of the
/// window divisor counts over m in [1, x] and the independent Poisson
/// vector with the windows' reciprocal sums as means.  Full enumeration;
/// the Poisson mass off the observed support enters exactly through the
/// complementary CDF.  All window primes must be <= x and every window
/// nonempty.
double tv_distance_empirical(std::uint64_t x,
                             std::span<const PrimeClassSet> windows);

/// Balance check on prime-divisor counts by class: for j in {1, 3} and
/// every t on a log-spaced grid in [3, m] (endpoints included),
/// |#{p <= t : p | m, p = j mod 4} - 0.5 log log t| < (log log x)^(2/3).
bool has_balanced_divisor_counts(const Factorization& f, double x,
                                 unsigned grid_points = 48);

struct DensityReport {
  std::uint64_t x = 0;
  double eps = 0;
  double scale = 0;
  TailVariant variant = TailVariant::tail_product;
  std::uint64_t total = 0;
  std::uint64_t fail_small_powerful = 0;
  std::uint64_t fail_few_divisors = 0;
  std::uint64_t fail_dominant = 0;
  std::uint64_t fail_smooth_bound = 0;   // only tallied when grid_valid
  std::uint64_t alternating_hits = 0;    // only tallied when grid_valid
  bool grid_valid = false;
  int levels = 0;
  double failure_scale = 0;  // exp(-(log 1/eps)^(1/10))

  double frac_fail_small_powerful() const;
  double frac_fail_few_divisors() const;
  double frac_fail_dominant() const;
  double frac_fail_smooth_bound() const;
  double frac_alternating_hits() const;

  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

/// Streams m = 1..x through the block factor sieve and tallies the failure
/// counts of every condition plus the alternating-pattern hits.  A grid
/// that degenerates at these parameters (no windows, or a cutoff below 3)
/// disables the window-based tallies instead of aborting; domain errors in
/// the parameters still throw.  x <= 10^8.
DensityReport density_scan(std::uint64_t x, double eps, double scale,
                           TailVariant variant, unsigned threads = 0);

}  // namespace sqavoid
