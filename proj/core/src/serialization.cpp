#include "sqavoid/serialization.hpp"

#include <stdexcept>

#include <json.hpp>

namespace sqavoid {

namespace {

using nlohmann::json;

json parse_checked(std::string_view text, const char* type) {
  json j = json::parse(text);
  if (j.value("schema", 0) != 1)
    throw std::invalid_argument("unsupported schema version");
  if (j.value("type", "") != type)
    throw std::invalid_argument(std::string("expected type ") + type);
  return j;
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

ConstructionMethod method_from_string(const std::string& s) {
  for (auto m : {ConstructionMethod::cohen, ConstructionMethod::two_prime,
                 ConstructionMethod::p_square, ConstructionMethod::ruzsa65,
                 ConstructionMethod::product}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown construction method: " + s);
}

TailVariant variant_from_string(const std::string& s) {
  if (s == "tail") return TailVariant::tail_product;
  if (s == "smooth") return TailVariant::smooth_part;
  throw std::invalid_argument("unknown variant: " + s);
}

}  // namespace

std::string to_json(const SearchResult& r, int indent) {
  json j{{"schema", 1},
         {"type", "search_result"},
         {"m", r.m},
         {"best_size", r.best_size},
         {"witness", r.witness},
         {"lower_bound", r.lower_bound},
         {"upper_bound", r.upper_bound},
         {"exact", r.exact},
         {"nodes_explored", r.nodes_explored},
         {"elapsed_ms", r.elapsed_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return dump(j, indent);
}

SearchResult search_result_from_json(std::string_view text) {
  const json j = parse_checked(text, "search_result");
  SearchResult r;
  r.m = j.at("m").get<std::uint64_t>();
  r.best_size = j.at("best_size").get<std::uint32_t>();
  r.witness = j.at("witness").get<std::vector<std::uint64_t>>();
  r.lower_bound = j.at("lower_bound").get<std::uint32_t>();
  r.upper_bound = j.at("upper_bound").get<std::uint32_t>();
  r.exact = j.at("exact").get<bool>();
  r.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  r.note = j.value("note", "");
  return r;
}

std::string to_json(const ConstructionOutput& c, int indent) {
  json j{{"schema", 1},
         {"type", "construction"},
         {"m", c.m},
         {"method", to_string(c.method)},
         {"set", c.set},
         {"guaranteed_size", c.guaranteed_size}};
  return dump(j, indent);
}

ConstructionOutput construction_from_json(std::string_view text) {
  const json j = parse_checked(text, "construction");
  ConstructionOutput c;
  c.m = j.at("m").get<std::uint64_t>();
  c.method = method_from_string(j.at("method").get<std::string>());
  c.set = j.at("set").get<std::vector<std::uint64_t>>();
  c.guaranteed_size = j.at("guaranteed_size").get<double>();
  return c;
}

std::string to_json(const BoundReport& b, int indent) {
  json entries = json::array();
  for (const auto& e : b.bounds) {
    entries.push_back(json{{"name", e.name},
                           {"value", e.value},
                           {"effective", e.effective},
                           {"applicable", e.applicable},
                           {"reason", e.reason}});
  }
  json j{{"schema", 1},
         {"type", "bound_report"},
         {"m", b.m},
         {"bounds", entries},
         {"best", b.best}};
  return dump(j, indent);
}

BoundReport bound_report_from_json(std::string_view text) {
  const json j = parse_checked(text, "bound_report");
  BoundReport b;
  b.m = j.at("m").get<std::uint64_t>();
  for (const auto& e : j.at("bounds")) {
    BoundEntry entry;
    entry.name = e.at("name").get<std::string>();
    entry.value = e.at("value").get<double>();
    entry.effective = e.at("effective").get<double>();
    entry.applicable = e.at("applicable").get<bool>();
    entry.reason = e.at("reason").get<std::string>();
    b.bounds.push_back(std::move(entry));
  }
  b.best = j.at("best").get<double>();
  return b;
}

std::string to_json(const DensityReport& d, int indent) {
  json j{{"schema", 1},
         {"type", "density_report"},
         {"x", d.x},
         {"eps", d.eps},
         {"scale", d.scale},
         {"variant", to_string(d.variant)},
         {"total", d.total},
         {"fail_small_powerful", d.fail_small_powerful},
         {"fail_few_divisors", d.fail_few_divisors},
         {"fail_dominant", d.fail_dominant},
         {"fail_smooth_bound", d.fail_smooth_bound},
         {"alternating_hits", d.alternating_hits},
         {"grid_valid", d.grid_valid},
         {"levels", d.levels},
         {"failure_scale", d.failure_scale}};
  return dump(j, indent);
}

DensityReport density_report_from_json(std::string_view text) {
  const json j = parse_checked(text, "density_report");
  DensityReport d;
  d.x = j.at("x").get<std::uint64_t>();
  d.eps = j.at("eps").get<double>();
  d.scale = j.at("scale").get<double>();
  d.variant = variant_from_string(j.at("variant").get<std::string>());
  d.total = j.at("total").get<std::uint64_t>();
  d.fail_small_powerful = j.at("fail_small_powerful").get<std::uint64_t>();
  d.fail_few_divisors = j.at("fail_few_divisors").get<std::uint64_t>();
  d.fail_dominant = j.at("fail_dominant").get<std::uint64_t>();
  d.fail_smooth_bound = j.at("fail_smooth_bound").get<std::uint64_t>();
  d.alternating_hits = j.at("alternating_hits").get<std::uint64_t>();
  d.grid_valid = j.at("grid_valid").get<bool>();
  d.levels = j.at("levels").get<int>();
  d.failure_scale = j.at("failure_scale").get<double>();
  return d;
}

namespace {

json window_to_json(const PrimeClassSet& t) {
  const char* cls = t.cls == ResidueClass::one
                        ? "1"
                        : (t.cls == ResidueClass::three ? "3" : "all");
  return json{{"label", t.label},
              {"lo", t.lo},
              {"hi", t.hi},
              {"class", cls},
              {"primes", t.primes}};
}

PrimeClassSet window_from_json(const json& j) {
  PrimeClassSet t;
  t.label = j.at("label").get<std::string>();
  t.lo = j.at("lo").get<double>();
  t.hi = j.at("hi").get<double>();
  const std::string cls = j.at("class").get<std::string>();
  t.cls = cls == "1" ? ResidueClass::one
                     : (cls == "3" ? ResidueClass::three : ResidueClass::all);
  t.primes = j.at("primes").get<std::vector<std::uint64_t>>();
  return t;
}

}  // namespace

std::string to_json(const PoissonGrid& g, int indent) {
  json windows = json::array();
  for (const auto& w : g.windows) windows.push_back(window_to_json(w));
  json j{{"schema", 1},
         {"type", "grid"},
         {"x", g.x},
         {"eps", g.eps},
         {"scale", g.scale},
         {"step", g.step},
         {"levels", g.levels},
         {"cutoffs", g.cutoffs},
         {"windows", windows},
         {"expected", g.expected},
         {"synthetic", g.synthetic}};
  return dump(j, indent);
}

PoissonGrid grid_from_json(std::string_view text) {
  const json j = parse_checked(text, "grid");
  PoissonGrid g;
  g.x = j.at("x").get<double>();
  g.eps = j.at("eps").get<double>();
  g.scale = j.at("scale").get<double>();
  g.step = j.at("step").get<double>();
  g.levels = j.at("levels").get<int>();
  g.cutoffs = j.at("cutoffs").get<std::vector<double>>();
  for (const auto& w : j.at("windows")) g.windows.push_back(window_from_json(w));
  g.expected = j.at("expected").get<std::vector<double>>();
  g.synthetic = j.at("synthetic").get<bool>();
  return g;
}

}  // namespace sqavoid
