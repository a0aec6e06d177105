#include "sqavoid/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqavoid/residues.hpp"

namespace sqavoid {

namespace {

using u64 = std::uint64_t;

// Above this, pivot-halving recursions switch to greedy scans (the recursion
// touches every residue of Z_p at its top levels).
constexpr u64 kRecursionLimit = u64(1) << 21;
// Hard cap for the standalone full-length chain.
constexpr u64 kChainLimit = u64(1) << 25;

// Bit table of squares mod n.
std::vector<u64> square_table(u64 n) {
  std::vector<u64> bits((n + 63) / 64, 0);
  for (u64 a = 0; a < n; ++a) {
    const u64 sq = mul_mod(a, a, n);
    bits[sq >> 6] |= u64(1) << (sq & 63);
  }
  return bits;
}

bool bit(const std::vector<u64>& bits, u64 i) {
  return (bits[i >> 6] >> (i & 63)) & 1;
}

void assert_avoiding(const ConstructionOutput& out) {
  if (!is_avoiding(out.set, out.m))
    throw std::logic_error("construction produced a non-avoiding set");
  if (static_cast<double>(out.set.size()) < out.guaranteed_size)
    throw std::logic_error("construction missed its guaranteed size");
}

// Pivot recursion on the residue/nonresidue partition of differences.
// Returns the pivots with their branch colours (+1 residue branch,
// -1 nonresidue branch) followed by the final pivot (colour 0).
std::vector<std::pair<u64, int>> halving_pivots(u64 p,
                                                const std::vector<u64>& sq) {
  std::vector<std::pair<u64, int>> pivots;
  std::vector<u64> live, res, non;

  // First level over all of Z_p with pivot 0: the classes are the nonzero
  // squares and the nonsquares, of equal size, and ties go to the residue
  // branch.
  live.reserve(p / 2 + 1);
  for (u64 u = 1; u < p; ++u) {
    if (bit(sq, u)) live.push_back(u);
  }
  pivots.emplace_back(0, +1);

  while (!live.empty()) {
    const u64 v = live.front();
    if (live.size() == 1) {
      pivots.emplace_back(v, 0);
      break;
    }
    res.clear();
    non.clear();
    for (std::size_t i = 1; i < live.size(); ++i) {
      const u64 u = live[i];
      const u64 d = u >= v ? u - v : u + p - v;
      (bit(sq, d) ? res : non).push_back(u);
    }
    if (res.size() >= non.size()) {
      pivots.emplace_back(v, +1);
      live.swap(res);
    } else {
      pivots.emplace_back(v, -1);
      live.swap(non);
    }
  }
  return pivots;
}

ConstructionOutput cohen_by_recursion(u64 p) {
  const auto sq = square_table(p);
  const auto pivots = halving_pivots(p, sq);

  int residue_branches = 0, nonresidue_branches = 0;
  for (const auto& [v, c] : pivots) {
    if (c > 0) ++residue_branches;
    if (c < 0) ++nonresidue_branches;
  }
  // The final pivot joins either colour class for free.
  const int majority = residue_branches > nonresidue_branches ? +1 : -1;

  ConstructionOutput out;
  out.m = p;
  out.method = ConstructionMethod::cohen;
  out.guaranteed_size = std::log(static_cast<double>(p)) / (2 * std::log(2.0));
  for (const auto& [v, c] : pivots) {
    if (c == majority || c == 0) out.set.push_back(v);
  }
  if (majority > 0) {
    // All pairwise differences are squares; multiplying by a nonresidue
    // flips them all (and -1 is a square since p = 1 mod 4).
    const u64 xi = least_nonresidue(p);
    for (u64& v : out.set) v = mul_mod(v, xi, p);
  }
  std::sort(out.set.begin(), out.set.end());
  return out;
}

ConstructionOutput cohen_by_greedy(u64 p) {
  ConstructionOutput out;
  out.m = p;
  out.method = ConstructionMethod::cohen;
  out.guaranteed_size = std::log(static_cast<double>(p)) / (2 * std::log(2.0));
  const std::size_t target =
      static_cast<std::size_t>(std::floor(out.guaranteed_size)) + 1;
  for (u64 u = 0; u < p && out.set.size() < target; ++u) {
    bool ok = true;
    for (u64 a : out.set) {
      const u64 d = u >= a ? u - a : u + p - a;
      if (jacobi(d, p) != -1) {  // -1 is a square, so one direction suffices
        ok = false;
        break;
      }
    }
    if (ok) out.set.push_back(u);
  }
  if (out.set.size() < target)
    throw std::runtime_error("cohen_set: greedy scan exhausted the field");
  return out;
}

// Transitive chain in the residue tournament by the halving argument; the
// result beats front-to-back: a_s - a_t is a nonzero square for s < t.
std::vector<u64> chain_by_recursion(u64 q, const std::vector<u64>& sq) {
  std::vector<u64> front, back, live, wins, losses;
  live.resize(q);
  for (u64 u = 0; u < q; ++u) live[u] = u;

  while (!live.empty()) {
    const u64 v = live.front();
    if (live.size() == 1) {
      front.push_back(v);
      break;
    }
    wins.clear();
    losses.clear();
    for (std::size_t i = 1; i < live.size(); ++i) {
      const u64 u = live[i];
      const u64 d = v >= u ? v - u : v + q - u;
      (bit(sq, d) ? wins : losses).push_back(u);
    }
    if (wins.size() >= losses.size()) {
      front.push_back(v);
      live.swap(wins);
    } else {
      back.push_back(v);
      live.swap(losses);
    }
  }
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

std::vector<u64> chain_by_greedy(u64 q, std::size_t target) {
  std::vector<u64> chain;
  for (u64 u = 0; u < q && chain.size() < target; ++u) {
    bool ok = true;
    for (u64 a : chain) {
      const u64 d = a >= u ? a - u : a + q - u;
      if (jacobi(d, q) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) chain.push_back(u);
  }
  if (chain.size() < target)
    throw std::runtime_error("transitive chain: greedy scan exhausted the field");
  return chain;
}

void require_prime_3mod4(u64 q, const char* who) {
  if (q % 4 != 3 || !is_prime(q))
    throw std::invalid_argument(std::string(who) +
                                ": need a prime = 3 (mod 4)");
}

std::size_t chain_floor(u64 q) {
  std::size_t k = 0;
  while (q >>= 1) ++k;  // floor(log2 q)
  return k + 1;
}

std::vector<u64> chain_with_target(u64 q, std::size_t target) {
  if (q <= kRecursionLimit) {
    auto chain = chain_by_recursion(q, square_table(q));
    if (chain.size() > target) chain.resize(target);
    return chain;
  }
  return chain_by_greedy(q, target);
}

}  // namespace

std::string to_string(ConstructionMethod method) {
  switch (method) {
    case ConstructionMethod::cohen:
      return "cohen";
    case ConstructionMethod::two_prime:
      return "two_prime";
    case ConstructionMethod::p_square:
      return "p_square";
    case ConstructionMethod::ruzsa65:
      return "ruzsa65";
    case ConstructionMethod::product:
      return "product";
  }
  return "?";
}

ConstructionOutput cohen_set(u64 p) {
  if (p % 4 != 1 || !is_prime(p))
    throw std::invalid_argument("cohen_set: need a prime = 1 (mod 4)");
  ConstructionOutput out =
      p <= kRecursionLimit ? cohen_by_recursion(p) : cohen_by_greedy(p);
  assert_avoiding(out);
  return out;
}

std::vector<u64> transitive_chain(u64 q) {
  require_prime_3mod4(q, "transitive_chain");
  if (q > kChainLimit)
    throw std::invalid_argument("transitive_chain: q too large to enumerate");
  auto chain = chain_by_recursion(q, square_table(q));
  if (chain.size() < chain_floor(q))
    throw std::logic_error("transitive_chain: missed its length floor");
  return chain;
}

ConstructionOutput two_prime_set(u64 q1, u64 q2) {
  require_prime_3mod4(q1, "two_prime_set");
  require_prime_3mod4(q2, "two_prime_set");
  if (q1 <= q2) throw std::invalid_argument("two_prime_set: need q1 > q2");
  if (q2 > kChainLimit)
    throw std::invalid_argument("two_prime_set: q2 too large to enumerate");

  auto chain2 = chain_by_recursion(q2, square_table(q2));
  // Above the enumeration threshold the q1 chain is grown greedily, and only
  // to the floor(log2 q2) + 1 links the guarantee needs; the full recursion
  // keeps whatever both chains deliver.
  const std::size_t target =
      q1 <= kRecursionLimit ? chain2.size() : chain_floor(q2);
  auto chain1 = chain_with_target(q1, target);
  const std::size_t k = std::min(chain1.size(), chain2.size());
  chain1.resize(k);
  chain2.resize(k);

  ConstructionOutput out;
  out.m = q1 * q2;
  out.method = ConstructionMethod::two_prime;
  out.guaranteed_size = std::log(static_cast<double>(q2)) / std::log(2.0);
  out.set.reserve(k);
  for (std::size_t s = 0; s < k; ++s)
    out.set.push_back(crt_pair(chain1[s], q1, chain2[k - 1 - s], q2));
  std::sort(out.set.begin(), out.set.end());
  assert_avoiding(out);
  return out;
}

ConstructionOutput p_square_set(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p_square_set: p must be prime");
  if (p >= (u64(1) << 32))
    throw std::invalid_argument("p_square_set: p^2 out of range");
  ConstructionOutput out;
  out.m = p * p;
  out.method = ConstructionMethod::p_square;
  out.guaranteed_size = static_cast<double>(p);
  out.set.reserve(p);
  for (u64 k = 0; k < p; ++k) out.set.push_back(k * p);
  // A square divisible by p is divisible by p^2, so no difference kp with
  // 0 < k < p lies in the residue set; enumeration re-checks small cases.
  if (out.m <= (u64(1) << 19)) assert_avoiding(out);
  return out;
}

ConstructionOutput ruzsa65() {
  // Lexicographically least maximum avoiding subset of Z_65, from an
  // exhaustive search.
  ConstructionOutput out;
  out.m = 65;
  out.method = ConstructionMethod::ruzsa65;
  out.guaranteed_size = 7;
  out.set = {0, 2, 5, 22, 24, 43, 46};
  assert_avoiding(out);
  return out;
}

ConstructionOutput product_set(const Factorization& f) {
  struct Group {
    u64 modulus;
    std::vector<u64> set;
    double guarantee;
  };
  std::vector<Group> groups;
  std::vector<u64> q3;

  for (const auto& pp : f.factors) {
    if (pp.exponent == 1 && pp.prime % 4 == 1) {
      auto c = cohen_set(pp.prime);
      groups.push_back(
          {pp.prime, std::move(c.set), c.guaranteed_size});
    } else if (pp.exponent == 1 && pp.prime % 4 == 3) {
      q3.push_back(pp.prime);
    } else {
      u64 pe = 1;
      for (std::uint32_t i = 0; i < pp.exponent; ++i) pe *= pp.prime;
      groups.push_back({pe, {0}, 1.0});
    }
  }

  std::sort(q3.rbegin(), q3.rend());
  std::size_t i = 0;
  for (; i + 1 < q3.size(); i += 2) {
    auto t = two_prime_set(q3[i], q3[i + 1]);
    groups.push_back({q3[i] * q3[i + 1], std::move(t.set), t.guaranteed_size});
  }
  if (i < q3.size()) groups.push_back({q3[i], {0}, 1.0});

  ConstructionOutput out;
  out.m = f.m;
  out.method = ConstructionMethod::product;
  out.guaranteed_size = 1;
  out.set = {0};
  u64 combined_mod = 1;
  for (const auto& g : groups) {
    std::vector<u64> next;
    next.reserve(out.set.size() * g.set.size());
    for (u64 a : out.set) {
      for (u64 b : g.set) next.push_back(crt_pair(a, combined_mod, b, g.modulus));
    }
    out.set.swap(next);
    combined_mod *= g.modulus;
    out.guaranteed_size *= g.guarantee;
  }
  std::sort(out.set.begin(), out.set.end());

  // Certify avoidance through the exponent-one odd primes: each nonzero
  // pairwise difference must be a nonresidue, in both directions, at one of
  // them.  This is sufficient for any m since being a square mod m requires
  // being a square mod every prime-power component.
  std::vector<u64> witnesses;
  for (const auto& pp : f.factors) {
    if (pp.exponent == 1 && pp.prime > 2) witnesses.push_back(pp.prime);
  }
  for (std::size_t a = 0; a < out.set.size(); ++a) {
    for (std::size_t b = a + 1; b < out.set.size(); ++b) {
      const u64 d = out.set[b] - out.set[a];
      bool fwd = false, bwd = false;
      for (u64 q : witnesses) {
        if (!fwd && jacobi(d % q, q) == -1) fwd = true;
        if (!bwd && jacobi((f.m - d) % q, q) == -1) bwd = true;
        if (fwd && bwd) break;
      }
      if (!fwd || !bwd)
        throw std::logic_error("product_set: uncertified difference");
    }
  }
  if (static_cast<double>(out.set.size()) < out.guaranteed_size)
    throw std::logic_error("product_set: missed its guaranteed size");
  return out;
}

}  // namespace sqavoid
