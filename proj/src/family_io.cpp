#include "condlab/family_io.hpp"

#include <algorithm>
#include <string>

#include "condlab/error.hpp"

namespace condlab {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  if (!object.is_object()) throw ConfigError(std::string(context) + ": expected an object");
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError("unknown key '" + std::string(context) + "." + item.key() + "'");
  }
}

namespace {

std::string key_path(std::string_view context, std::string_view key) {
  return std::string(context) + "." + std::string(key);
}

double number_at(const json& j, std::string_view key, std::string_view context) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ConfigError("missing key '" + key_path(context, key) + "'");
  if (!it->is_number()) throw ConfigError("key '" + key_path(context, key) + "' must be a number");
  return it->get<double>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError("key '" + path + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError("key '" + path + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Region parse_region(const json& j, std::string_view context) {
  reject_unknown_keys(j, {"dimension", "shape", "L", "center"}, context);
  const json& dim_j = j.contains("dimension") ? j.at("dimension") : json();
  if (!dim_j.is_number_integer()) throw ConfigError("key '" + key_path(context, "dimension") + "' must be an integer");
  const int d = dim_j.get<int>();
  if (d < 1 || d > 3) throw ConfigError("key '" + key_path(context, "dimension") + "' must be 1, 2 or 3");
  if (!j.contains("shape") || !j.at("shape").is_string())
    throw ConfigError("key '" + key_path(context, "shape") + "' must be a string");
  const double size = number_at(j, "L", context);
  Vec center = Vec::Zero(d);
  if (j.contains("center")) {
    const auto c = numbers(j.at("center"), key_path(context, "center"));
    if (static_cast<int>(c.size()) != d)
      throw ConfigError("key '" + key_path(context, "center") + "' must have 'dimension' entries");
    for (int a = 0; a < d; ++a) center(a) = c[a];
  }
  try {
    return Region::make(shape_from_string(j.at("shape").get<std::string>()), center, size);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string(context) + ": " + e.what());
  }
}

json to_json(const Region& region) {
  json c = json::array();
  for (Index a = 0; a < region.center().size(); ++a) c.push_back(region.center()(a));
  return json{{"dimension", region.dimension()},
              {"shape", std::string(to_string(region.shape()))},
              {"L", region.size()},
              {"center", c}};
}

FamilySpec parse_family_spec(const json& j, std::string_view context) {
  reject_unknown_keys(j, {"kind", "epsilon", "boost", "modes", "region", "custom_occupations"}, context);
  FamilySpec spec;
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("key '" + key_path(context, "kind") + "' must be a string");
  try {
    spec.kind = family_kind_from_string(j.at("kind").get<std::string>());
  } catch (const ParameterError& e) {
    throw ConfigError("key '" + key_path(context, "kind") + "': " + e.what());
  }
  if (j.contains("epsilon")) spec.epsilon = number_at(j, "epsilon", context);
  if (j.contains("boost")) spec.boost = numbers(j.at("boost"), key_path(context, "boost"));
  if (j.contains("modes")) {
    if (!j.at("modes").is_number_integer() || j.at("modes").get<long long>() < 1)
      throw ConfigError("key '" + key_path(context, "modes") + "' must be a positive integer");
    spec.modes = j.at("modes").get<Index>();
  }
  if (j.contains("region")) spec.region = parse_region(j.at("region"), key_path(context, "region"));
  if (j.contains("custom_occupations")) {
    const std::string path = key_path(context, "custom_occupations");
    const json& rows = j.at("custom_occupations");
    if (!rows.is_array()) throw ConfigError("key '" + path + "' must be an array");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number())
        throw ConfigError("key '" + path + "' rows must be [sigma, [occupations]]");
      const double sigma = row[0].get<double>();
      if (spec.custom_occupations.count(sigma))
        throw ConfigError("key '" + path + "' repeats a sigma value");
      spec.custom_occupations[sigma] = numbers(row[1], path);
    }
  }
  if (spec.kind == FamilyKind::custom && spec.custom_occupations.empty())
    throw ConfigError("key '" + key_path(context, "custom_occupations") + "' is required for custom families");
  if (spec.kind == FamilyKind::boosted && spec.boost.empty())
    throw ConfigError("key '" + key_path(context, "boost") + "' is required for boosted families");
  if ((spec.kind == FamilyKind::appendix || spec.kind == FamilyKind::boosted) &&
      !(spec.epsilon > 0.0 && spec.epsilon < 1.0))
    throw ConfigError("key '" + key_path(context, "epsilon") + "' must lie in (0, 1)");
  return spec;
}

json to_json(const FamilySpec& spec) {
  json j{{"kind", std::string(to_string(spec.kind))}};
  if (spec.kind == FamilyKind::appendix || spec.kind == FamilyKind::boosted) j["epsilon"] = spec.epsilon;
  if (!spec.boost.empty()) j["boost"] = spec.boost;
  if (spec.modes) j["modes"] = *spec.modes;
  if (spec.region) j["region"] = to_json(*spec.region);
  if (!spec.custom_occupations.empty()) {
    json rows = json::array();
    for (const auto& [sigma, nu] : spec.custom_occupations) rows.push_back(json::array({sigma, nu}));
    j["custom_occupations"] = rows;
  }
  return j;
}

Index default_resolution(int dimension) {
  switch (dimension) {
    case 1:
      return 4096;
    case 2:
      return 256;
    default:
      return 96;
  }
}

Index default_modes(const Region& region) {
  if (region.shape() == Shape::ball && region.dimension() > 1) return 20;
  return 256;
}

StateFamily build_family(const FamilySpec& spec, const Region& region, Index resolution) {
  const Grid grid = Grid::covering(region, resolution);
  const Index modes = spec.modes.value_or(default_modes(region));
  auto basis = std::make_shared<const ModeBasis>(default_basis(grid, region, modes));
  switch (spec.kind) {
    case FamilyKind::appendix:
      return appendix_family(basis, spec.epsilon);
    case FamilyKind::boosted: {
      if (static_cast<int>(spec.boost.size()) != region.dimension())
        throw ConfigError("key 'family.boost' must have one entry per dimension");
      Vec p(region.dimension());
      for (int a = 0; a < region.dimension(); ++a) p(a) = spec.boost[a];
      return boosted_family(appendix_family(basis, spec.epsilon), p);
    }
    case FamilyKind::heated:
      return heated_family(basis);
    case FamilyKind::custom:
      return custom_family(basis, spec.custom_occupations);
  }
  throw ConfigError("unsupported family kind");
}

}  // namespace condlab
