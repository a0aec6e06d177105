#include "sqavoid/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqavoid {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1000;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    std::vector<bool> composite(kTrialLimit + 1, false);
    for (u64 i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant of Pollard rho; n must be odd, composite, > 1.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // Backtrack one step at a time.
      do {
        ys = (mul_mod(ys, ys, n) + c) % n;
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_recursive(u64 n, std::vector<u64>& out) {
  while (n > 1) {
    if (is_prime(n)) {
      out.push_back(n);
      return;
    }
    u64 d = pollard_brent(n);
    factor_recursive(d, out);
    n /= d;
  }
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 mod) {
  return static_cast<u64>(static_cast<u128>(a) * b % mod);
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  u64 result = mod > 1 ? 1 : 0;
  base %= mod;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set sufficient for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 Factorization::reassemble() const {
  u64 prod = 1;
  for (const auto& pp : factors) {
    for (std::uint32_t i = 0; i < pp.exponent; ++i) prod *= pp.prime;
  }
  return prod;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

Factorization factorize(u64 m) {
  if (m == 0) throw std::invalid_argument("factorize: m must be positive");
  Factorization f;
  f.m = m;
  u64 n = m;
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (n > 1) {
    if (n <= kTrialLimit * kTrialLimit || is_prime(n)) {
      // Below the trial square the cofactor is prime.
      f.factors.push_back({n, 1});
    } else {
      std::vector<u64> rest;
      factor_recursive(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        f.factors.push_back({rest[i], static_cast<std::uint32_t>(j - i)});
        i = j;
      }
    }
  }
  return f;
}

unsigned omega(const Factorization& f) {
  return static_cast<unsigned>(f.factors.size());
}

unsigned omega3(const Factorization& f) {
  unsigned count = 0;
  for (const auto& pp : f.factors) count += (pp.prime % 4 == 3);
  return count;
}

u64 powerful_part(const Factorization& f) {
  u64 prod = 1;
  for (const auto& pp : f.factors) {
    if (pp.exponent < 2) continue;
    for (std::uint32_t i = 0; i < pp.exponent; ++i) prod *= pp.prime;
  }
  return prod;
}

u64 smooth_part_3mod4(const Factorization& f, double y, bool include_powerful) {
  u64 prod = 1;
  for (const auto& pp : f.factors) {
    if (pp.prime % 4 != 3) continue;
    if (!(static_cast<double>(pp.prime) < y)) continue;
    if (!include_powerful && pp.exponent >= 2) continue;
    for (std::uint32_t i = 0; i < pp.exponent; ++i) prod *= pp.prime;
  }
  return prod;
}

int jacobi(u64 a, u64 n) {
  if (n == 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi: n must be odd and positive");
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int legendre(std::int64_t a, u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return jacobi(static_cast<u64>(r), p);
}

u64 least_nonresidue(u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("least_nonresidue: p must be an odd prime");
  for (u64 n = 2;; ++n) {
    if (jacobi(n % p, p) == -1) return n;
  }
}

PrimeClassSet primes_in_class(double lo, double hi, ResidueClass cls,
                              std::string label) {
  if (hi < lo) throw std::invalid_argument("primes_in_class: hi < lo");
  if (hi > 9.2e18)
    throw std::invalid_argument("primes_in_class: hi out of range");

  PrimeClassSet out;
  out.label = std::move(label);
  out.lo = lo;
  out.hi = hi;
  out.cls = cls;

  const u64 first = lo < 1 ? 2 : static_cast<u64>(std::floor(lo)) + 1;
  const u64 last = hi < 2 ? 0 : static_cast<u64>(std::floor(hi));
  if (last < 2 || first > last) return out;

  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(last))) + 2;
  while (root > 2 && (root - 1) * (root - 1) > last) --root;
  if (root > (1ull << 26))
    throw std::invalid_argument("primes_in_class: range too large to sieve");

  std::vector<bool> base_composite(root + 1, false);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (base_composite[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) base_composite[j] = true;
  }

  const auto keep = [cls](u64 p) {
    switch (cls) {
      case ResidueClass::one:
        return p % 4 == 1;
      case ResidueClass::three:
        return p % 4 == 3;
      case ResidueClass::all:
        return true;
    }
    return false;
  };

  constexpr u64 kSegment = 1ull << 22;
  std::vector<bool> seg;
  for (u64 low = std::max<u64>(first, 2); low <= last;) {
    const u64 high = std::min(last, low + kSegment - 1);
    seg.assign(high - low + 1, true);
    for (u64 p : base) {
      if (p * p > high) break;
      u64 start = std::max(p * p, (low + p - 1) / p * p);
      for (u64 j = start; j <= high; j += p) seg[j - low] = false;
    }
    for (u64 v = low; v <= high; ++v) {
      if (seg[v - low] && keep(v)) out.primes.push_back(v);
    }
    low = high + 1;
  }
  return out;
}

double prime_reciprocal_sum(const PrimeClassSet& t) {
  double sum = 0;
  for (u64 p : t.primes) sum += 1.0 / static_cast<double>(p);
  return sum;
}

double prime_reciprocal_square_sum(const PrimeClassSet& t) {
  double sum = 0;
  for (u64 p : t.primes) {
    const double d = static_cast<double>(p);
    sum += 1.0 / (d * d);
  }
  return sum;
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
  // Solve r1 + m1 * k = r2 (mod m2).
  std::int64_t s = 0, old_s = 1;
  std::int64_t r = static_cast<std::int64_t>(m2),
               old_r = static_cast<std::int64_t>(m1 % m2);
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw std::invalid_argument("crt_pair: moduli not coprime");
  std::int64_t inv = old_s % static_cast<std::int64_t>(m2);
  if (inv < 0) inv += static_cast<std::int64_t>(m2);
  const u64 diff = (r2 + m2 - r1 % m2) % m2;
  const u64 k = mul_mod(diff, static_cast<u64>(inv), m2);
  return r1 + m1 * k;
}

void factorize_range(u64 lo, u64 hi,
                     const std::function<void(const Factorization&)>& fn) {
  if (lo < 1) lo = 1;
  if (hi < lo) return;
  if (hi >= (1ull << 32))
    throw std::invalid_argument("factorize_range: hi out of range");

  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
  while (root > 2 && (root - 1) * (root - 1) > hi) --root;
  std::vector<bool> base_composite(root + 1, false);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (base_composite[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) base_composite[j] = true;
  }

  constexpr u64 kBlock = 1ull << 22;
  constexpr int kMaxFactors = 12;

  std::vector<u64> residual(std::min(kBlock, hi - lo + 1));
  std::vector<std::uint8_t> nfac(residual.size());
  std::vector<std::uint32_t> fprime(residual.size() * kMaxFactors);
  std::vector<std::uint8_t> fexp(residual.size() * kMaxFactors);

  Factorization scratch;
  for (u64 low = lo; low <= hi;) {
    const u64 high = std::min(hi, low + kBlock - 1);
    const std::size_t len = static_cast<std::size_t>(high - low + 1);
    for (std::size_t i = 0; i < len; ++i) {
      residual[i] = low + i;
      nfac[i] = 0;
    }
    for (u64 p : base) {
      if (p > high) break;
      u64 start = (low + p - 1) / p * p;
      for (u64 j = start; j <= high; j += p) {
        const std::size_t i = static_cast<std::size_t>(j - low);
        std::uint8_t e = 0;
        while (residual[i] % p == 0) {
          residual[i] /= p;
          ++e;
        }
        const std::size_t slot = i * kMaxFactors + nfac[i]++;
        fprime[slot] = static_cast<std::uint32_t>(p);
        fexp[slot] = e;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      scratch.m = low + i;
      scratch.factors.clear();
      for (std::uint8_t k = 0; k < nfac[i]; ++k) {
        const std::size_t slot = i * kMaxFactors + k;
        scratch.factors.push_back({fprime[slot], fexp[slot]});
      }
      if (residual[i] > 1) scratch.factors.push_back({residual[i], 1});
      fn(scratch);
    }
    low = high + 1;
  }
}

}  // namespace sqavoid
