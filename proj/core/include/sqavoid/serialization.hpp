#pragma once

#include <string>
#include <string_view>

#include "sqavoid/bounds.hpp"
#include "sqavoid/constructions.hpp"
#include "sqavoid/density.hpp"
#include "sqavoid/search.hpp"

namespace sqavoid {

// JSON with a top-level "schema": 1 and a "type" tag; parse(serialize(r))
// reproduces r exactly for every report type.

std::string to_json(const SearchResult& r, int indent = -1);
std::string to_json(const ConstructionOutput& c, int indent = -1);
std::string to_json(const BoundReport& b, int indent = -1);
std::string to_json(const DensityReport& d, int indent = -1);
std::string to_json(const PoissonGrid& g, int indent = -1);

SearchResult search_result_from_json(std::string_view text);
ConstructionOutput construction_from_json(std::string_view text);
BoundReport bound_report_from_json(std::string_view text);
DensityReport density_report_from_json(std::string_view text);
PoissonGrid grid_from_json(std::string_view text);

}  // namespace sqavoid
