#include "sqavoid/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqavoid {

namespace {

using u64 = std::uint64_t;

double omega_factor(unsigned w) {
  // (10 w)^(2w); 1 when w = 0.
  return std::pow(10.0 * w, 2.0 * w);
}

}  // namespace

std::optional<double> character_sum_bound(const Factorization& f) {
  if (!f.squarefree()) return std::nullopt;
  const unsigned w = omega(f);
  u64 q = 1;
  if (omega3(f) % 2 == 1) {
    for (const auto& pp : f.factors) {
      if (pp.prime % 4 == 3) {
        q = pp.prime;
        break;
      }
    }
  }
  return std::sqrt(static_cast<double>(f.m) / static_cast<double>(q)) *
         omega_factor(w);
}

std::optional<double> character_sum_bound_prior(const Factorization& f) {
  if (!f.squarefree()) return std::nullopt;
  const unsigned w = omega(f);
  return std::sqrt(static_cast<double>(f.m)) *
         std::pow(3.0 * w, 1.5 * w);
}

double trivial_prime_bound(u64 p) {
  if (!is_prime(p))
    throw std::invalid_argument("trivial_prime_bound: p must be prime");
  if (p == 2 || p % 4 == 3) return 1.0;
  return std::sqrt(static_cast<double>(p));
}

std::optional<double> hanson_petridis_bound(u64 p) {
  if (!is_prime(p) || p % 4 != 1) return std::nullopt;
  return std::sqrt(static_cast<double>(p) / 2.0) + 1.0;
}

double compose_bound(u64 m1, double g_m2) {
  return static_cast<double>(m1) * g_m2;
}

bool has_huge_q3_factor(const Factorization& f, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("has_huge_q3_factor: eps must be in (0, 1/2)");
  const double threshold =
      std::pow(static_cast<double>(f.m), 1.0 - eps);
  for (const auto& pp : f.factors) {
    if (pp.prime % 4 == 3 && static_cast<double>(pp.prime) >= threshold)
      return true;
  }
  return false;
}

BoundReport bound_report(const Factorization& f) {
  BoundReport report;
  report.m = f.m;
  const double md = static_cast<double>(f.m);

  const auto add = [&](std::string name, std::optional<double> value,
                       std::string reason) {
    BoundEntry e;
    e.name = std::move(name);
    e.applicable = value.has_value();
    e.value = value.value_or(0.0);
    e.effective = e.applicable ? std::min(e.value, md) : 0.0;
    e.reason = std::move(reason);
    report.bounds.push_back(std::move(e));
  };

  const bool prime = f.factors.size() == 1 && f.factors[0].exponent == 1;
  add("trivial_prime",
      prime ? std::optional<double>(trivial_prime_bound(f.m)) : std::nullopt,
      prime ? "" : "m is not prime");
  add("hanson_petridis", prime ? hanson_petridis_bound(f.m) : std::nullopt,
      prime && f.m % 4 == 1 ? "" : "needs a prime m = 1 (mod 4)");
  add("character_sum", character_sum_bound(f),
      f.squarefree() ? "" : "m is not squarefree");
  add("character_sum_prior", character_sum_bound_prior(f),
      f.squarefree() ? "from prior work" : "m is not squarefree");

  report.best = md;
  for (const auto& e : report.bounds) {
    if (e.applicable) report.best = std::min(report.best, e.effective);
  }
  return report;
}

SplitBound split_bound(const Factorization& f, double x, double eps,
                       TailVariant variant) {
  SplitBound out;
  out.small_powerful = small_powerful_part(f, x);
  out.few_divisors = few_prime_divisors(f, x);
  out.target = std::pow(static_cast<double>(f.m), 0.5 - eps / 5.0);

  const u64 powerful = powerful_part(f);
  const double sqrt_powerful = std::sqrt(static_cast<double>(powerful));

  // Enumerate dominant primes and keep the best composed bound.
  std::vector<u64> qlist;
  for (const auto& pp : f.factors) {
    if (pp.exponent == 1 && pp.prime % 4 == 3) qlist.push_back(pp.prime);
  }
  std::sort(qlist.rbegin(), qlist.rend());
  const double cut = std::pow(x, eps);

  for (std::size_t j = 0; j < qlist.size(); j += 2) {
    const u64 q = qlist[j];
    if (!(static_cast<double>(q) > cut)) break;  // descending, no later hit
    u64 smooth = 1;
    if (variant == TailVariant::tail_product) {
      for (std::size_t i = j + 1; i < qlist.size(); ++i) smooth *= qlist[i];
    } else {
      smooth = smooth_part_3mod4(f, static_cast<double>(q));
    }
    if (!(static_cast<double>(q) >
          static_cast<double>(smooth) * static_cast<double>(smooth)))
      continue;

    // Split m = m1 * m2 with m1 = powerful * tail, m2 squarefree with an odd
    // number of 3-mod-4 primes and least such prime q.
    u64 tail = 1;
    for (std::size_t i = j + 1; i < qlist.size(); ++i) tail *= qlist[i];
    const u64 m1 = powerful * tail;
    const u64 m2 = f.m / m1;
    Factorization f2;
    f2.m = m2;
    for (const auto& pp : f.factors) {
      if (pp.exponent == 1 && m2 % pp.prime == 0) f2.factors.push_back(pp);
    }
    const auto inner = character_sum_bound(f2);
    const double composed = compose_bound(m1, *inner);
    if (!out.found || composed < out.bound) {
      out.found = true;
      out.split_prime = q;
      out.bound = composed;
      const unsigned w2 = omega(f2);
      out.factor_ok =
          std::pow(10.0 * w2, 2.0 * w2) * sqrt_powerful <=
          std::pow(static_cast<double>(f.m), eps / 20.0);
    }
  }
  out.bound_ok = out.found && out.bound <= out.target;
  return out;
}

}  // namespace sqavoid
