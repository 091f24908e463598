#include "condlab/app/config.hpp"

#include <cmath>
#include <fstream>

#include "condlab/error.hpp"

namespace condlab::app {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("key '" + path + "' must be a number");
  return j.get<double>();
}

Index integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError("key '" + path + "' must be an integer");
  return j.get<Index>();
}

Vec vector_of(const json& j, const std::string& path, int dimension) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension)
    throw ConfigError("key '" + path + "' must be an array of " + std::to_string(dimension) + " numbers");
  Vec v(dimension);
  for (int a = 0; a < dimension; ++a) v(a) = number(j[a], path);
  return v;
}

std::vector<double> parse_schedule(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(number(v, "schedule"));
  } else if (j.is_object()) {
    reject_unknown_keys(j, {"start", "ratio", "count"}, "schedule");
    for (const char* key : {"start", "ratio", "count"})
      if (!j.contains(key)) throw ConfigError(std::string("missing key 'schedule.") + key + "'");
    const double start = number(j.at("start"), "schedule.start");
    const double ratio = number(j.at("ratio"), "schedule.ratio");
    const Index count = integer(j.at("count"), "schedule.count");
    if (!(start > 0.0)) throw ConfigError("key 'schedule.start' must be positive");
    if (!(ratio > 1.0)) throw ConfigError("key 'schedule.ratio' must exceed 1");
    if (count < 1) throw ConfigError("key 'schedule.count' must be positive");
    out = geometric_schedule(start, ratio, count);
  } else {
    throw ConfigError("key 'schedule' must be an array or {start, ratio, count}");
  }
  if (out.empty()) throw ConfigError("key 'schedule' must not be empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw ConfigError("key 'schedule' must be strictly increasing");
  return out;
}

void parse_thresholds(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"bounded", "divergent", "occupation_floor", "modulus_tolerance", "rank_one_probes",
                          "homogeneity"},
                      "thresholds");
  auto& t = cfg.report.thresholds;
  if (j.contains("bounded")) t.bounded = number(j.at("bounded"), "thresholds.bounded");
  if (j.contains("divergent")) t.divergent = number(j.at("divergent"), "thresholds.divergent");
  if (j.contains("occupation_floor")) {
    t.occupation_floor = number(j.at("occupation_floor"), "thresholds.occupation_floor");
    if (!(t.occupation_floor > 0.0)) throw ConfigError("key 'thresholds.occupation_floor' must be positive");
  }
  if (j.contains("modulus_tolerance")) {
    cfg.report.modulus_tolerance = number(j.at("modulus_tolerance"), "thresholds.modulus_tolerance");
    if (!(cfg.report.modulus_tolerance > 0.0))
      throw ConfigError("key 'thresholds.modulus_tolerance' must be positive");
  }
  if (j.contains("rank_one_probes")) {
    cfg.report.rank_one_probes = integer(j.at("rank_one_probes"), "thresholds.rank_one_probes");
    if (cfg.report.rank_one_probes < 1) throw ConfigError("key 'thresholds.rank_one_probes' must be positive");
  }
  if (j.contains("homogeneity")) {
    cfg.homogeneity_tolerance = number(j.at("homogeneity"), "thresholds.homogeneity");
    if (!(*cfg.homogeneity_tolerance > 0.0)) throw ConfigError("key 'thresholds.homogeneity' must be positive");
  }
  if (!(t.bounded > 0.0 && t.bounded < t.divergent))
    throw ConfigError("key 'thresholds.bounded' must satisfy 0 < bounded < divergent");
}

void parse_probe(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"L0", "kind"}, "probe");
  if (j.contains("L0")) cfg.probe.size = number(j.at("L0"), "probe.L0");
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw ConfigError("key 'probe.kind' must be a string");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bump") cfg.probe.kind = ProbeKind::bump;
    else if (kind == "indicator") cfg.probe.kind = ProbeKind::indicator;
    else throw ConfigError("key 'probe.kind' must be 'bump' or 'indicator'");
  }
}

int parse_axis(const json& j, const std::string& path, int dimension) {
  const Index axis = integer(j, path);
  if (axis < 0 || axis >= dimension) throw ConfigError("key '" + path + "' out of range");
  return static_cast<int>(axis);
}

void parse_scan(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"sigma", "axis", "stride"}, "scan");
  const int d = cfg.region.dimension();
  if (j.contains("sigma")) cfg.scan.sigma = number(j.at("sigma"), "scan.sigma");
  if (j.contains("axis")) cfg.scan.axis = parse_axis(j.at("axis"), "scan.axis", d);
  if (j.contains("stride")) {
    cfg.scan.stride = integer(j.at("stride"), "scan.stride");
    if (*cfg.scan.stride < 1) throw ConfigError("key 'scan.stride' must be positive");
  }
}

void parse_spectrum(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"sigma", "axis", "half_width", "step", "center", "points", "lobes"}, "spectrum");
  const int d = cfg.region.dimension();
  auto& s = cfg.spectrum;
  if (j.contains("sigma")) s.sigma = number(j.at("sigma"), "spectrum.sigma");
  if (j.contains("axis")) s.axis = parse_axis(j.at("axis"), "spectrum.axis", d);
  if (j.contains("half_width")) s.half_width = number(j.at("half_width"), "spectrum.half_width");
  if (j.contains("step")) s.step = number(j.at("step"), "spectrum.step");
  if (j.contains("center")) s.center = vector_of(j.at("center"), "spectrum.center", d);
  if (j.contains("points")) {
    if (!j.at("points").is_array() || j.at("points").empty())
      throw ConfigError("key 'spectrum.points' must be a non-empty array");
    for (const auto& p : j.at("points")) s.points.push_back(vector_of(p, "spectrum.points", d));
  }
  if (j.contains("lobes")) {
    s.lobes = integer(j.at("lobes"), "spectrum.lobes");
    if (s.lobes < 2) throw ConfigError("key 'spectrum.lobes' must be at least 2");
  }
  if (!(s.half_width >= 0.0)) throw ConfigError("key 'spectrum.half_width' must be nonnegative");
  if (!(s.step > 0.0)) throw ConfigError("key 'spectrum.step' must be positive");
}

}  // namespace

std::vector<double> geometric_schedule(double start, double ratio, Index count) {
  std::vector<double> out;
  for (Index i = 0; i < count; ++i) out.push_back(start * std::pow(ratio, static_cast<double>(i)));
  return out;
}

RunConfig parse_config(const json& j) {
  reject_unknown_keys(j, {"region", "resolution", "family", "schedule", "thresholds", "probe", "scan", "spectrum",
                          "output"},
                      "config");
  RunConfig cfg;
  if (!j.contains("family")) throw ConfigError("missing key 'family'");
  cfg.family = parse_family_spec(j.at("family"));
  if (j.contains("region")) {
    cfg.region = parse_region(j.at("region"));
    if (cfg.family.region && !(*cfg.family.region == cfg.region))
      throw ConfigError("key 'family.region' conflicts with 'region'");
  } else if (cfg.family.region) {
    cfg.region = *cfg.family.region;
  } else {
    throw ConfigError("missing key 'region'");
  }
  const int d = cfg.region.dimension();
  cfg.resolution = default_resolution(d);
  if (j.contains("resolution")) {
    cfg.resolution = integer(j.at("resolution"), "resolution");
    if (cfg.resolution < 4) throw ConfigError("key 'resolution' must be at least 4");
  }
  if (cfg.family.kind == FamilyKind::boosted && static_cast<int>(cfg.family.boost.size()) != d)
    throw ConfigError("key 'family.boost' must have one entry per dimension");

  if (j.contains("schedule")) {
    cfg.schedule = parse_schedule(j.at("schedule"));
  } else if (cfg.family.kind == FamilyKind::custom) {
    for (const auto& [sigma, nu] : cfg.family.custom_occupations) cfg.schedule.push_back(sigma);
  } else {
    throw ConfigError("missing key 'schedule'");
  }
  if (cfg.family.kind == FamilyKind::custom) {
    for (double s : cfg.schedule)
      if (!cfg.family.custom_occupations.count(s))
        throw ConfigError("key 'schedule' contains sigma " + std::to_string(s) + " absent from the custom table");
  }

  if (j.contains("thresholds")) parse_thresholds(j.at("thresholds"), cfg);
  if (j.contains("probe")) parse_probe(j.at("probe"), cfg);
  if (!(cfg.probe.size > 0.0 && cfg.probe.size < cfg.region.size()))
    throw ConfigError("key 'probe.L0' must satisfy 0 < L0 < L");
  if (j.contains("scan")) parse_scan(j.at("scan"), cfg);
  if (j.contains("spectrum")) parse_spectrum(j.at("spectrum"), cfg);
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("key 'output' must be a string");
    cfg.output = j.at("output").get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

}  // namespace condlab::app
