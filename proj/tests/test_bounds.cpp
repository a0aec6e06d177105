#include "sqavoid/bounds.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace sqavoid;

TEST_CASE("character-sum bound worked examples") {
  auto b65 = character_sum_bound(factorize(65));
  REQUIRE(b65.has_value());
  // omega = 2, omega3 = 0 even, q = 1.
  CHECK(*b65 == doctest::Approx(std::sqrt(65.0) * std::pow(20.0, 4))
                    .epsilon(1e-12));

  auto b231 = character_sum_bound(factorize(231));  // 3*7*11
  REQUIRE(b231.has_value());
  // omega = 3, omega3 = 3 odd, q = 3.
  CHECK(*b231 ==
        doctest::Approx(std::sqrt(231.0 / 3.0) * std::pow(30.0, 6))
            .epsilon(1e-12));
  CHECK(*b231 == doctest::Approx(6.398e9).epsilon(1e-3));

  CHECK_FALSE(character_sum_bound(factorize(12)).has_value());
  CHECK(*character_sum_bound(factorize(1)) == doctest::Approx(1.0));
}

TEST_CASE("prior character-sum bound") {
  auto b = character_sum_bound_prior(factorize(15));  // omega = 2
  REQUIRE(b.has_value());
  CHECK(*b == doctest::Approx(std::sqrt(15.0) * std::pow(6.0, 3.0)));
  CHECK_FALSE(character_sum_bound_prior(factorize(4)).has_value());
}

TEST_CASE("trivial prime bound") {
  CHECK(trivial_prime_bound(7) == 1.0);
  CHECK(trivial_prime_bound(13) == doctest::Approx(std::sqrt(13.0)));
  CHECK(trivial_prime_bound(2) == 1.0);
  CHECK_THROWS_AS(trivial_prime_bound(12), std::invalid_argument);
}

TEST_CASE("hanson-petridis bound") {
  auto b13 = hanson_petridis_bound(13);
  REQUIRE(b13.has_value());
  CHECK(*b13 == doctest::Approx(std::sqrt(6.5) + 1).epsilon(1e-12));
  auto b5 = hanson_petridis_bound(5);
  REQUIRE(b5.has_value());
  CHECK(*b5 == doctest::Approx(std::sqrt(2.5) + 1).epsilon(1e-12));
  CHECK_FALSE(hanson_petridis_bound(7).has_value());
  CHECK_FALSE(hanson_petridis_bound(15).has_value());
}

TEST_CASE("composition bound") {
  CHECK(compose_bound(1, 3.5) == 3.5);
  CHECK(compose_bound(4, 3.0) == 12.0);
  // Splitting at a huge prime factor: m = 21, q = 7, bound m/q = 3.
  CHECK(compose_bound(21 / 7, 1.0) == 3.0);
}

TEST_CASE("huge 3-mod-4 factor membership") {
  CHECK(has_huge_q3_factor(factorize(21), 0.45));   // 7 >= 21^0.55
  CHECK_FALSE(has_huge_q3_factor(factorize(65), 0.45));
  CHECK_FALSE(has_huge_q3_factor(factorize(65), 0.01));
  CHECK(has_huge_q3_factor(factorize(9967), 0.3));  // prime, 3 mod 4
  CHECK_THROWS_AS(has_huge_q3_factor(factorize(21), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(has_huge_q3_factor(factorize(21), 0.0),
                  std::invalid_argument);
}

TEST_CASE("bound report picks the least applicable value") {
  auto r13 = bound_report(factorize(13));
  // min(sqrt(13), sqrt(6.5)+1, clamped character sums) = sqrt(6.5)+1.
  CHECK(r13.best == doctest::Approx(std::sqrt(6.5) + 1).epsilon(1e-12));

  auto r7 = bound_report(factorize(7));
  CHECK(r7.best == 1.0);

  auto r65 = bound_report(factorize(65));
  CHECK(r65.best == 65.0);  // everything else clamps to m

  auto r12 = bound_report(factorize(12));
  CHECK(r12.best == 12.0);
  for (const auto& e : r12.bounds) CHECK_FALSE(e.applicable);
}

TEST_CASE("bound report entries carry effective clamps") {
  auto r = bound_report(factorize(101));
  for (const auto& e : r.bounds) {
    if (!e.applicable) continue;
    CHECK(e.effective == doctest::Approx(std::min(e.value, 101.0)));
    CHECK(e.value >= 1.0);
  }
}

TEST_CASE("split bound recomposes and honours its inequality chain") {
  const double eps = 0.3;
  for (std::uint64_t m = 16; m <= 4000; ++m) {
    const auto f = factorize(m);
    const double x = static_cast<double>(m) * static_cast<double>(m);
    for (auto variant : {TailVariant::tail_product, TailVariant::smooth_part}) {
      const SplitBound sb = split_bound(f, x, eps, variant);
      CHECK(sb.target ==
            doctest::Approx(std::pow(static_cast<double>(m), 0.5 - eps / 5)));
      if (!sb.found) continue;
      CHECK(sb.split_prime % 4 == 3);
      CHECK(m % sb.split_prime == 0);
      CHECK(static_cast<double>(sb.split_prime) > std::pow(x, eps));
      CHECK(sb.bound_ok == (sb.bound <= sb.target));

      // Two-route recomputation through the dominant prime.
      std::vector<std::uint64_t> q3;
      for (const auto& pp : f.factors)
        if (pp.exponent == 1 && pp.prime % 4 == 3) q3.push_back(pp.prime);
      std::sort(q3.rbegin(), q3.rend());
      double best = 0;
      bool found = false;
      for (std::size_t j = 0; j < q3.size(); j += 2) {
        if (!(static_cast<double>(q3[j]) > std::pow(x, eps))) continue;
        std::uint64_t tail = 1;
        for (std::size_t i = j + 1; i < q3.size(); ++i) tail *= q3[i];
        const std::uint64_t certificate =
            variant == TailVariant::tail_product
                ? tail
                : smooth_part_3mod4(f, static_cast<double>(q3[j]));
        if (!(static_cast<double>(q3[j]) >
              static_cast<double>(certificate) *
                  static_cast<double>(certificate)))
          continue;
        const std::uint64_t m1 = powerful_part(f) * tail;
        const auto inner = character_sum_bound(factorize(m / m1));
        REQUIRE(inner.has_value());
        const double composed = compose_bound(m1, *inner);
        if (!found || composed < best) best = composed;
        found = true;
      }
      REQUIRE(found);
      CHECK(sb.bound == doctest::Approx(best).epsilon(1e-12));

      // With the dominance certificate and x >= m^2 the composed bound is
      // below m^(1/2 - eps/2) times the explicit factor.
      const std::uint64_t m2 = m / (powerful_part(f) *
                                    [&] {
                                      std::uint64_t tail = 1;
                                      bool seen = false;
                                      for (std::uint64_t q : q3) {
                                        if (seen) tail *= q;
                                        if (q == sb.split_prime) seen = true;
                                      }
                                      return tail;
                                    }());
      const unsigned w2 = omega(factorize(m2));
      const double envelope =
          std::pow(static_cast<double>(m), 0.5 - eps / 2.0) *
          std::pow(10.0 * w2, 2.0 * w2) *
          std::sqrt(static_cast<double>(powerful_part(f)));
      CHECK(sb.bound <= envelope * (1 + 1e-9));
    }
  }
}
