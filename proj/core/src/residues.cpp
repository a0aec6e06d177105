#include "sqavoid/residues.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqavoid {

namespace {

using u64 = std::uint64_t;

ResidueMode pick_mode(u64 m) {
  if (m <= ResidueSet::kEnumLimit) return ResidueMode::enumerated;
  return ResidueMode::crt;
}

}  // namespace

ResidueSet::ResidueSet(u64 m) : ResidueSet(m, pick_mode(m)) {}

ResidueSet::ResidueSet(u64 m, ResidueMode mode) : m_(m), mode_(mode) {
  if (m < 2) throw std::invalid_argument("ResidueSet: m must be >= 2");
  if (mode_ == ResidueMode::enumerated) {
    if (m > kEnumLimit)
      throw std::invalid_argument("ResidueSet: m too large to enumerate");
    bits_.assign((m + 63) / 64, 0);
    for (u64 a = 0; a < m; ++a) {
      const u64 sq = mul_mod(a, a, m);
      bits_[sq >> 6] |= u64(1) << (sq & 63);
    }
  } else {
    fac_ = factorize(m);
    if (!fac_.squarefree())
      throw std::invalid_argument(
          "ResidueSet: crt mode requires a squarefree modulus");
  }
}

bool ResidueSet::contains(u64 a) const {
  if (a >= m_) throw std::invalid_argument("ResidueSet: element out of range");
  if (mode_ == ResidueMode::enumerated)
    return (bits_[a >> 6] >> (a & 63)) & 1;
  for (const auto& pp : fac_.factors) {
    if (pp.prime == 2) continue;  // R_2 = Z_2
    if (jacobi(a % pp.prime, pp.prime) == -1) return false;
  }
  return true;
}

u64 ResidueSet::size() const {
  if (mode_ == ResidueMode::enumerated) {
    u64 count = 0;
    for (u64 w : bits_) count += static_cast<u64>(__builtin_popcountll(w));
    return count;
  }
  u64 count = 1;
  for (const auto& pp : fac_.factors)
    count *= pp.prime == 2 ? 2 : (pp.prime + 1) / 2;
  return count;
}

std::vector<u64> ResidueSet::elements() const {
  if (mode_ != ResidueMode::enumerated)
    throw std::logic_error("ResidueSet: elements() requires enumerated mode");
  std::vector<u64> out;
  for (u64 a = 0; a < m_; ++a) {
    if ((bits_[a >> 6] >> (a & 63)) & 1) out.push_back(a);
  }
  return out;
}

AvoidanceGraph::AvoidanceGraph(u64 m) : m_(m) {
  if (m < 1 || m > kMaxModulus)
    throw std::invalid_argument("AvoidanceGraph: modulus out of range");
  wpr_ = static_cast<std::size_t>((m + 63) / 64);
  bits_.assign(wpr_ * m, 0);
  if (m == 1) return;

  ResidueSet rs(m, ResidueMode::enumerated);
  // Differences d with both d and m-d outside R_m; bit 0 stays clear, so the
  // graph has no self-loops.
  std::vector<u64> bad(wpr_, 0);
  for (u64 d = 1; d < m; ++d) {
    if (!rs.contains(d) && !rs.contains(m - d)) bad[d >> 6] |= u64(1) << (d & 63);
  }
  // Row a satisfies row_a[b] = bad[(b - a) mod m].  Lay the mask out twice
  // so each row is a 64-bit-aligned-free slice starting at bit m - a.
  const std::size_t dwords = 2 * wpr_ + 1;
  std::vector<u64> bad2(dwords, 0);
  for (u64 i = 0; i < 2 * m; ++i) {
    const u64 d = i >= m ? i - m : i;
    if ((bad[d >> 6] >> (d & 63)) & 1) bad2[i >> 6] |= u64(1) << (i & 63);
  }
  const u64 tail_mask = (m & 63) ? ((u64(1) << (m & 63)) - 1) : ~u64(0);
  for (u64 a = 0; a < m; ++a) {
    u64* row = &bits_[a * wpr_];
    const u64 start = m - a;
    const std::size_t word = static_cast<std::size_t>(start >> 6);
    const unsigned off = static_cast<unsigned>(start & 63);
    if (off == 0) {
      for (std::size_t w = 0; w < wpr_; ++w) row[w] = bad2[word + w];
    } else {
      for (std::size_t w = 0; w < wpr_; ++w)
        row[w] = (bad2[word + w] >> off) | (bad2[word + w + 1] << (64 - off));
    }
    row[wpr_ - 1] &= tail_mask;
  }
}

bool AvoidanceGraph::adjacent(u64 a, u64 b) const {
  return (bits_[a * wpr_ + (b >> 6)] >> (b & 63)) & 1;
}

std::vector<u64> AvoidanceGraph::neighbors(u64 v) const {
  std::vector<u64> out;
  const u64* r = row(v);
  for (u64 b = 0; b < m_; ++b) {
    if ((r[b >> 6] >> (b & 63)) & 1) out.push_back(b);
  }
  return out;
}

bool is_avoiding(std::span<const u64> a, const ResidueSet& rs) {
  const u64 m = rs.modulus();
  for (u64 x : a) {
    if (x >= m) throw std::invalid_argument("is_avoiding: element out of range");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const u64 d = a[i] >= a[j] ? a[i] - a[j] : a[i] + m - a[j];
      if (d == 0) continue;  // duplicate elements denote the same residue
      if (rs.contains(d) || rs.contains(m - d)) return false;
    }
  }
  return true;
}

bool is_avoiding(std::span<const u64> a, u64 m) {
  if (m == 1) {
    for (u64 x : a)
      if (x >= m) throw std::invalid_argument("is_avoiding: element out of range");
    return true;
  }
  ResidueSet rs(m);
  return is_avoiding(a, rs);
}

u64 odd_part_reduction(u64 m) {
  if (m % 4 != 2)
    throw std::invalid_argument("odd_part_reduction: need m = 2 (mod 4)");
  return m / 2;
}

}  // namespace sqavoid
