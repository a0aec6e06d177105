#include "sqavoid/serialization.hpp"

#include <doctest.h>

using namespace sqavoid;

TEST_CASE("search result round trip") {
  SearchResult r;
  r.m = 65;
  r.best_size = 7;
  r.witness = {0, 2, 5, 22, 24, 43, 46};
  r.lower_bound = 7;
  r.upper_bound = 7;
  r.exact = true;
  r.nodes_explored = 23;
  r.elapsed_ms = 0.125;
  CHECK(search_result_from_json(to_json(r)) == r);

  r.note = "m=1 answered by convention";
  r.exact = false;
  r.upper_bound = 12;
  CHECK(search_result_from_json(to_json(r)) == r);
  CHECK(search_result_from_json(to_json(r, 2)) == r);
}

TEST_CASE("construction round trip") {
  ConstructionOutput c;
  c.m = 77;
  c.method = ConstructionMethod::two_prime;
  c.set = {3, 36, 59};
  c.guaranteed_size = 2.807354922057604;
  CHECK(construction_from_json(to_json(c)) == c);
  for (auto method :
       {ConstructionMethod::cohen, ConstructionMethod::p_square,
        ConstructionMethod::ruzsa65, ConstructionMethod::product}) {
    c.method = method;
    CHECK(construction_from_json(to_json(c)) == c);
  }
}

TEST_CASE("bound report round trip") {
  BoundReport b;
  b.m = 13;
  b.bounds.push_back({"trivial_prime", 3.605551275463989, 3.605551275463989,
                      true, ""});
  b.bounds.push_back({"character_sum", 0.0, 0.0, false, "m is not squarefree"});
  b.best = 3.5495097567963922;
  CHECK(bound_report_from_json(to_json(b)) == b);
}

TEST_CASE("density report round trip") {
  DensityReport d;
  d.x = 100000;
  d.eps = 0.5;
  d.scale = 3.0;
  d.variant = TailVariant::smooth_part;
  d.total = 100000;
  d.fail_small_powerful = 21489;
  d.fail_few_divisors = 123;
  d.fail_dominant = 45678;
  d.fail_smooth_bound = 0;
  d.alternating_hits = 0;
  d.grid_valid = false;
  d.levels = 0;
  d.failure_scale = 0.39;
  CHECK(density_report_from_json(to_json(d)) == d);
}

TEST_CASE("grid round trip") {
  PoissonGrid g = build_grid(1e12, 0.05, 3.0);
  CHECK(grid_from_json(to_json(g)) == g);
  PoissonGrid synth = build_grid(1e30, 1e-3, 3.0, true);
  CHECK(grid_from_json(to_json(synth)) == synth);
}

TEST_CASE("schema and type tags are enforced") {
  SearchResult r;
  r.m = 5;
  r.best_size = 2;
  r.witness = {1, 4};
  r.lower_bound = 2;
  r.upper_bound = 2;
  r.exact = true;
  const auto text = to_json(r);
  CHECK_THROWS_AS(construction_from_json(text), std::invalid_argument);
  CHECK_THROWS_AS(search_result_from_json("{\"schema\":2}"),
                  std::invalid_argument);
}
