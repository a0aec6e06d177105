#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sqavoid {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of m.  Primes are strictly increasing and the
/// product of prime^exponent equals m; m = 1 has an empty factor list.
struct Factorization {
  std::uint64_t m = 1;
  std::vector<PrimePower> factors;

  std::uint64_t reassemble() const;
  bool squarefree() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Residue class of an odd prime mod 4.  The prime 2 is in neither class;
/// class filters silently exclude it.
enum class ResidueClass { one, three, all };

/// A set of primes in the half-open interval (lo, hi], all in the declared
/// class mod 4, sorted ascending.
struct PrimeClassSet {
  std::string label;
  std::vector<std::uint64_t> primes;
  double lo = 0;
  double hi = 0;
  ResidueClass cls = ResidueClass::all;

  friend bool operator==(const PrimeClassSet&, const PrimeClassSet&) = default;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Total on [1, 2^64): small trial division, then Brent's cycle-finding rho
/// with Miller-Rabin to certify prime cofactors.
Factorization factorize(std::uint64_t m);

/// Number of distinct prime divisors.
unsigned omega(const Factorization& f);
/// Number of distinct prime divisors congruent to 3 mod 4.
unsigned omega3(const Factorization& f);

/// Product of the prime powers p^a || m with a >= 2; 1 for squarefree m.
std::uint64_t powerful_part(const Factorization& f);

/// Product of the full prime powers q^a || m over primes q < y with
/// q = 3 (mod 4).  With include_powerful = false, primes of exponent >= 2
/// (those dividing the powerful part) are dropped, which restricts the
/// product to primes dividing m / powerful_part(m).
std::uint64_t smooth_part_3mod4(const Factorization& f, double y,
                                bool include_powerful = true);

/// Jacobi symbol (a|n) for odd n >= 1.  Throws if n is even or zero.
int jacobi(std::uint64_t a, std::uint64_t n);

/// Legendre symbol (a|p) for an odd prime p: 0 if p | a, +1 for nonzero
/// squares, -1 otherwise.  Throws std::invalid_argument unless p is an odd
/// prime.
int legendre(std::int64_t a, std::uint64_t p);

/// Smallest n >= 2 with (n|p) = -1, for an odd prime p >= 3.
std::uint64_t least_nonresidue(std::uint64_t p);

/// All primes p with lo < p <= hi and p in the requested class mod 4,
/// via a segmented sieve.  Throws if hi < lo or the range is too large
/// to sieve.
PrimeClassSet primes_in_class(double lo, double hi, ResidueClass cls,
                              std::string label = {});

/// Sum of 1/p over the set, in ascending-prime order.  0 for an empty set.
double prime_reciprocal_sum(const PrimeClassSet& t);
/// Sum of 1/p^2 over the set, in ascending-prime order.  0 for an empty set.
double prime_reciprocal_square_sum(const PrimeClassSet& t);

/// Chinese remainder lift: the unique r mod m1*m2 with r = r1 (mod m1) and
/// r = r2 (mod m2); m1, m2 must be coprime.
std::uint64_t crt_pair(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2,
                       std::uint64_t m2);

/// Streams the factorization of every m in [lo, hi] in increasing order.
/// Factoring is done block-wise with a segmented sieve (block size 2^22),
/// so the whole range is never materialized.  The Factorization passed to
/// the callback is a reused buffer; copy it if it must outlive the call.
/// Requires hi < 2^32.
void factorize_range(std::uint64_t lo, std::uint64_t hi,
                     const std::function<void(const Factorization&)>& fn);

}  // namespace sqavoid
