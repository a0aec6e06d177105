#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sqavoid/numtheory.hpp"

namespace sqavoid {

enum class ResidueMode { enumerated, crt };

/// Membership structure for R_m = {a^2 mod m}.  Small moduli are enumerated
/// into a bit vector; squarefree moduli beyond the enumeration bound answer
/// membership through per-prime Legendre symbols, which scales to 64-bit m.
class ResidueSet {
 public:
  static constexpr std::uint64_t kEnumLimit = std::uint64_t(1) << 25;

  explicit ResidueSet(std::uint64_t m);
  ResidueSet(std::uint64_t m, ResidueMode mode);

  std::uint64_t modulus() const { return m_; }
  ResidueMode mode() const { return mode_; }

  /// Membership of a, 0 <= a < m.
  bool contains(std::uint64_t a) const;

  /// |R_m|.
  std::uint64_t size() const;

  /// Sorted elements; enumerated mode only.
  std::vector<std::uint64_t> elements() const;

 private:
  std::uint64_t m_;
  ResidueMode mode_;
  std::vector<std::uint64_t> bits_;  // enumerated
  Factorization fac_;                // crt
};

/// Cayley-type graph on Z_m: {a,b} is an edge iff neither (a-b) mod m nor
/// (b-a) mod m lies in R_m.  A set obeys the avoidance predicate exactly
/// when it is a clique of this graph.  Row-major dense bit matrix,
/// vertex-transitive under translation.
class AvoidanceGraph {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 17;

  explicit AvoidanceGraph(std::uint64_t m);

  std::uint64_t modulus() const { return m_; }
  std::size_t words_per_row() const { return wpr_; }
  const std::uint64_t* row(std::uint64_t v) const { return &bits_[v * wpr_]; }

  bool adjacent(std::uint64_t a, std::uint64_t b) const;
  std::vector<std::uint64_t> neighbors(std::uint64_t v) const;

 private:
  std::uint64_t m_;
  std::size_t wpr_;
  std::vector<std::uint64_t> bits_;
};

/// The avoidance predicate: every difference of distinct elements of a,
/// in both orders, avoids R_m.  Elements must lie in [0, m).
bool is_avoiding(std::span<const std::uint64_t> a, const ResidueSet& rs);
bool is_avoiding(std::span<const std::uint64_t> a, std::uint64_t m);

/// For m = 2 (mod 4), the maximum avoiding set size equals that of m/2:
/// the projection argument gives <=, and lifting A into the even copies
/// gives >= since R_2 is all of Z_2.  Returns m/2; throws unless
/// m = 2 (mod 4).
std::uint64_t odd_part_reduction(std::uint64_t m);

}  // namespace sqavoid
