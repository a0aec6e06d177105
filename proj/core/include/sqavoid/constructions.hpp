#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqavoid/numtheory.hpp"

namespace sqavoid {

enum class ConstructionMethod { cohen, two_prime, p_square, ruzsa65, product };

std::string to_string(ConstructionMethod method);

/// An explicit avoiding set together with the analytic floor the method
/// promises.  Every constructor verifies the avoidance predicate before
/// returning; |set| >= guaranteed_size always holds.
struct ConstructionOutput {
  std::uint64_t m = 0;
  std::vector<std::uint64_t> set;  // sorted residues
  ConstructionMethod method = ConstructionMethod::product;
  double guaranteed_size = 1;

  friend bool operator==(const ConstructionOutput&,
                         const ConstructionOutput&) = default;
};

/// Ramsey-style avoiding set in Z_p for a prime p = 1 (mod 4), of size at
/// least log p / (2 log 2).  Small p run the pivot-halving recursion on the
/// two-coloured difference graph; above the enumeration threshold a
/// deterministic greedy scan collects the same floor.
ConstructionOutput cohen_set(std::uint64_t p);

/// A chain a_1, ..., a_k in Z_q (q prime, q = 3 mod 4) with a_s - a_t a
/// nonzero square mod q for all s < t, k >= floor(log2 q) + 1, built by the
/// halving argument on the quadratic-residue tournament.
std::vector<std::uint64_t> transitive_chain(std::uint64_t q);

/// Antidiagonal pairing of two transitive chains, an avoiding subset of
/// Z_{q1 q2} of size at least log q2 / log 2.  Requires primes
/// q1 > q2, both = 3 (mod 4).
ConstructionOutput two_prime_set(std::uint64_t q1, std::uint64_t q2);

/// The grid {0, p, 2p, ..., (p-1)p} in Z_{p^2}; avoiding of size p.
ConstructionOutput p_square_set(std::uint64_t p);

/// The classical 7-element avoiding subset of Z_65 (fixed constant found by
/// exhaustive search).
ConstructionOutput ruzsa65();

/// CRT product assembly: cohen sets at primes = 1 (mod 4) of exponent 1,
/// paired chains at primes = 3 (mod 4) of exponent 1 (descending, paired
/// consecutively), and singletons everywhere else.  Total on all m.
ConstructionOutput product_set(const Factorization& f);

}  // namespace sqavoid
