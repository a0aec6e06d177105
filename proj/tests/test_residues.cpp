#include "sqavoid/residues.hpp"

#include <doctest.h>

#include <stdexcept>

#include <numeric>

#include "oracles.hpp"

using namespace sqavoid;

TEST_CASE("residue sets of small moduli") {
  CHECK(ResidueSet(5).elements() == std::vector<std::uint64_t>{0, 1, 4});
  CHECK(ResidueSet(9).elements() == std::vector<std::uint64_t>{0, 1, 4, 7});
  CHECK(ResidueSet(65).size() == 21);
  CHECK_THROWS_AS(ResidueSet(1), std::invalid_argument);
}

TEST_CASE("0 and 1 are always residues") {
  for (std::uint64_t m = 2; m <= 500; ++m) {
    ResidueSet rs(m);
    CHECK(rs.contains(0));
    CHECK(rs.contains(1 % m));
  }
}

TEST_CASE("closure under multiplication by unit squares") {
  oracle::SplitMix64 rng(7);
  for (std::uint64_t m = 2; m <= 400; ++m) {
    ResidueSet rs(m);
    for (int trial = 0; trial < 32; ++trial) {
      const std::uint64_t a = rng.next() % m;
      std::uint64_t k = 1 + rng.next() % (m - 1);
      while (std::gcd(k, m) != 1) k = 1 + rng.next() % (m - 1);
      const std::uint64_t image = mul_mod(a, mul_mod(k, k, m), m);
      CHECK(rs.contains(a) == rs.contains(image));
    }
  }
}

TEST_CASE("enumerated membership matches direct squaring") {
  for (std::uint64_t m = 2; m <= 300; ++m) {
    ResidueSet rs(m, ResidueMode::enumerated);
    const auto table = oracle::residue_table(m);
    for (std::uint64_t a = 0; a < m; ++a)
      CHECK(rs.contains(a) == static_cast<bool>(table[a]));
  }
}

TEST_CASE("crt-backed membership equals enumeration for squarefree m") {
  // Exhaustive over every residue for small squarefree odd m, then sampled
  // for the rest of the range.
  for (std::uint64_t m = 3; m <= 5000; m += 2) {
    const auto f = factorize(m);
    if (!f.squarefree()) continue;
    ResidueSet enumerated(m, ResidueMode::enumerated);
    ResidueSet crt(m, ResidueMode::crt);
    for (std::uint64_t a = 0; a < m; ++a)
      REQUIRE(enumerated.contains(a) == crt.contains(a));
  }
  oracle::SplitMix64 rng(11);
  int tested = 0;
  while (tested < 400) {
    const std::uint64_t m = 5001 + rng.next() % 95000;
    if (m % 2 == 0 || !factorize(m).squarefree()) continue;
    ++tested;
    ResidueSet enumerated(m, ResidueMode::enumerated);
    ResidueSet crt(m, ResidueMode::crt);
    for (int trial = 0; trial < 64; ++trial) {
      const std::uint64_t a = rng.next() % m;
      REQUIRE(enumerated.contains(a) == crt.contains(a));
    }
  }
}

TEST_CASE("crt mode rejects non-squarefree moduli") {
  CHECK_THROWS_AS(ResidueSet(12, ResidueMode::crt), std::invalid_argument);
  CHECK_NOTHROW(ResidueSet(10, ResidueMode::crt));
  ResidueSet rs(10, ResidueMode::crt);
  ResidueSet en(10, ResidueMode::enumerated);
  for (std::uint64_t a = 0; a < 10; ++a) CHECK(rs.contains(a) == en.contains(a));
}

TEST_CASE("residue set size is (p+1)/2 at odd primes") {
  for (std::uint64_t p : primes_in_class(2, 10'000, ResidueClass::all).primes) {
    if (p == 2) continue;
    CHECK(ResidueSet(p).size() == (p + 1) / 2);
  }
}

TEST_CASE("avoidance predicate on worked examples") {
  CHECK(is_avoiding(std::vector<std::uint64_t>{0, 3, 6}, 9));
  CHECK(is_avoiding(std::vector<std::uint64_t>{0}, 7));
  CHECK_FALSE(is_avoiding(std::vector<std::uint64_t>{0, 1}, 5));
  CHECK(is_avoiding(std::vector<std::uint64_t>{0}, 1));
  CHECK_THROWS_AS(is_avoiding(std::vector<std::uint64_t>{5}, 5),
                  std::invalid_argument);
}

TEST_CASE("avoidance graph worked examples") {
  AvoidanceGraph g7(7);
  for (std::uint64_t a = 0; a < 7; ++a)
    for (std::uint64_t b = 0; b < 7; ++b) CHECK_FALSE(g7.adjacent(a, b));

  AvoidanceGraph g5(5);
  CHECK(g5.adjacent(0, 2));
  CHECK(g5.adjacent(2, 0));
  CHECK_FALSE(g5.adjacent(0, 1));

  AvoidanceGraph g9(9);
  CHECK(g9.adjacent(0, 3));
  CHECK(g9.adjacent(3, 6));
  CHECK(g9.adjacent(0, 6));

  CHECK_THROWS_AS(AvoidanceGraph((std::uint64_t(1) << 17) + 1),
                  std::invalid_argument);
}

TEST_CASE("graph structure: symmetry, no loops, translation invariance") {
  oracle::SplitMix64 rng(13);
  for (std::uint64_t m = 2; m <= 2000; ++m) {
    AvoidanceGraph g(m);
    for (int trial = 0; trial < 16; ++trial) {
      const std::uint64_t a = rng.next() % m;
      const std::uint64_t b = rng.next() % m;
      const std::uint64_t t = rng.next() % m;
      CHECK(g.adjacent(a, b) == g.adjacent(b, a));
      CHECK(g.adjacent(a, b) ==
            g.adjacent((a + t) % m, (b + t) % m));
      CHECK_FALSE(g.adjacent(a, a));
    }
  }
}

TEST_CASE("cliques of the graph are exactly the avoiding sets") {
  oracle::SplitMix64 rng(17);
  for (std::uint64_t m = 2; m <= 2000; m += 1 + m / 40) {
    AvoidanceGraph g(m);
    ResidueSet rs(m);
    for (int trial = 0; trial < 24; ++trial) {
      std::vector<std::uint64_t> a;
      const int len = 2 + static_cast<int>(rng.next() % 4);
      for (int i = 0; i < len; ++i) a.push_back(rng.next() % m);
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      bool clique = true;
      for (std::size_t i = 0; i < a.size() && clique; ++i)
        for (std::size_t j = i + 1; j < a.size() && clique; ++j)
          clique = g.adjacent(a[i], a[j]);
      CHECK(clique == is_avoiding(a, rs));
    }
  }
}

TEST_CASE("avoiding sets survive translation") {
  oracle::SplitMix64 rng(19);
  for (std::uint64_t m = 2; m <= 2000; m += 1 + m / 30) {
    ResidueSet rs(m);
    for (int trial = 0; trial < 16; ++trial) {
      std::vector<std::uint64_t> a;
      for (int i = 0; i < 3; ++i) a.push_back(rng.next() % m);
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      const std::uint64_t t = rng.next() % m;
      auto shifted = a;
      for (auto& v : shifted) v = (v + t) % m;
      CHECK(is_avoiding(a, rs) == is_avoiding(shifted, rs));
    }
  }
}

TEST_CASE("multiplying by a square unit preserves avoidance at odd primes") {
  oracle::SplitMix64 rng(23);
  for (std::uint64_t p : primes_in_class(2, 500, ResidueClass::all).primes) {
    if (p == 2) continue;
    ResidueSet rs(p);
    std::uint64_t u = 0;
    do {
      u = 1 + rng.next() % (p - 1);
    } while (!rs.contains(u));
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::uint64_t> a;
      for (int i = 0; i < 3; ++i) a.push_back(rng.next() % p);
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      auto scaled = a;
      for (auto& v : scaled) v = mul_mod(v, u, p);
      std::sort(scaled.begin(), scaled.end());
      CHECK(is_avoiding(a, rs) == is_avoiding(scaled, rs));
    }
  }
}

TEST_CASE("crt-backed avoidance scales to large squarefree moduli") {
  // 1000003 and 1000033 are primes = 3 resp. 1 (mod 4).
  const std::uint64_t q = 1000003, p = 1000033;
  REQUIRE(is_prime(q));
  REQUIRE(is_prime(p));
  const std::uint64_t m = q * p;
  // {0, c} avoids iff both c and -c are nonresidues mod m.
  std::uint64_t c = 2;
  while (!(jacobi(c % q, q) == -1 || jacobi(c % p, p) == -1) ||
         !(jacobi((q - c % q) % q, q) == -1 ||
           jacobi((p - c % p) % p, p) == -1))
    ++c;
  CHECK(is_avoiding(std::vector<std::uint64_t>{0, c}, m));
}

TEST_CASE("odd part reduction") {
  CHECK(odd_part_reduction(130) == 65);
  CHECK(odd_part_reduction(10) == 5);
  CHECK(odd_part_reduction(6) == 3);
  CHECK_THROWS_AS(odd_part_reduction(8), std::invalid_argument);
  CHECK_THROWS_AS(odd_part_reduction(7), std::invalid_argument);
}
