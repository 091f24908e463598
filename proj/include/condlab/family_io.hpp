#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "condlab/state_family.hpp"

namespace condlab {

/// Family definition as written in a family file:
///   { "kind": "appendix"|"boosted"|"heated"|"custom", "epsilon": float,
///     "boost": [floats], "modes": int, "region": {...},
///     "custom_occupations": [[sigma, [nu_k...]], ...] }
struct FamilySpec {
  FamilyKind kind = FamilyKind::appendix;
  double epsilon = 0.5;
  std::vector<double> boost;
  std::optional<Index> modes;
  std::optional<Region> region;
  OccupationTable custom_occupations;
};

/// Throws ConfigError naming the first key of `object` not in `allowed`.
void reject_unknown_keys(const nlohmann::json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

/// Region object: { "dimension": d, "shape": "interval"|"box"|"ball",
///                  "L": size, "center": [floats] }.
Region parse_region(const nlohmann::json& j, std::string_view context = "region");
nlohmann::json to_json(const Region& region);

FamilySpec parse_family_spec(const nlohmann::json& j, std::string_view context = "family");
nlohmann::json to_json(const FamilySpec& spec);

/// Default per-dimension resolution: 4096, 256, 96 points across the region.
Index default_resolution(int dimension);
/// Default mode count: 256 for intervals/boxes, 20 for balls (d > 1).
Index default_modes(const Region& region);

/// Builds grid, basis and family for a spec on `region`.
StateFamily build_family(const FamilySpec& spec, const Region& region, Index resolution);

}  // namespace condlab
