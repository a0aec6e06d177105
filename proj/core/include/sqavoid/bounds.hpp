#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqavoid/density.hpp"
#include "sqavoid/numtheory.hpp"

namespace sqavoid {

struct BoundEntry {
  std::string name;
  double value = 0;       // the formula value, unclamped
  double effective = 0;   // min(value, m)
  bool applicable = false;
  std::string reason;

  friend bool operator==(const BoundEntry&, const BoundEntry&) = default;
};

/// Evaluation of every closed-form bound at one modulus.  best is the
/// smallest applicable effective value (falling back to m itself).
struct BoundReport {
  std::uint64_t m = 0;
  std::vector<BoundEntry> bounds;
  double best = 0;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Character-sum upper bound sqrt(m/q) * (10 w)^{2w} for squarefree m, where
/// w = omega(m) and q is the least prime divisor = 3 (mod 4) when omega3(m)
/// is odd, else 1.  Empty for non-squarefree m.
std::optional<double> character_sum_bound(const Factorization& f);

/// The older character-sum bound sqrt(m) * (3 w)^{3w/2} for squarefree m,
/// kept for comparison.
std::optional<double> character_sum_bound_prior(const Factorization& f);

/// 1 for p = 3 (mod 4) and p = 2; sqrt(p) for p = 1 (mod 4).
double trivial_prime_bound(std::uint64_t p);

/// sqrt(p/2) + 1 for primes p = 1 (mod 4); empty otherwise.
std::optional<double> hanson_petridis_bound(std::uint64_t p);

/// Composition through a factor split m = m1 * m2: an avoiding set meets
/// each residue class mod m1 in an avoiding set mod m2, so m1 * g(m2) bounds
/// the whole.
double compose_bound(std::uint64_t m1, double g_m2);

/// True when m has a prime factor q = 3 (mod 4) with q >= m^(1-eps), which
/// forces every avoiding set below m^eps (split at q, where the
/// maximum is 1).  eps must lie in (0, 1/2).
bool has_huge_q3_factor(const Factorization& f, double eps);

BoundReport bound_report(const Factorization& f);

/// The composed bound obtained by splitting m at a dominant prime
/// q = 3 (mod 4): q > x^eps, q exceeding the square of the smooth part
/// below it, bound = P(m) * tail * sqrt(m2/q) * (10 w2)^{2 w2}.  The flags
/// record which hypotheses hold; bound_ok is only meaningful when a split
/// exists.
struct SplitBound {
  bool small_powerful = false;  // powerful part <= log x
  bool few_divisors = false;    // omega(m) <= 2 log log x
  bool found = false;           // a dominant prime exists
  std::uint64_t split_prime = 0;
  double bound = 0;             // min over dominant primes, when found
  double target = 0;            // m^(1/2 - eps/5)
  bool factor_ok = false;       // (10 w2)^{2 w2} sqrt(P) <= m^(eps/20)
  bool bound_ok = false;        // bound <= target

  friend bool operator==(const SplitBound&, const SplitBound&) = default;
};

SplitBound split_bound(const Factorization& f, double x, double eps,
                       TailVariant variant);

}  // namespace sqavoid
