#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "condlab/family_io.hpp"
#include "condlab/report.hpp"

namespace condlab::app {

enum class ProbeKind { bump, indicator };

struct ProbeConfig {
  double size = 0.1;  ///< L0: side length or diameter of O0
  ProbeKind kind = ProbeKind::bump;
};

struct ScanConfig {
  std::optional<double> sigma;  ///< defaults to the last schedule entry
  int axis = 0;
  std::optional<Index> stride;  ///< grid steps between shifts; default keeps ~64 per axis
};

struct SpectrumConfig {
  std::optional<double> sigma;
  int axis = 0;
  double half_width = 72.0;  ///< line offsets in [-half_width, half_width] around the center
  double step = 0.05;
  std::optional<Vec> center;       ///< defaults to the fitted momentum
  std::vector<Vec> points;         ///< explicit k list; replaces the line when non-empty
  Index lobes = 10;
};

struct RunConfig {
  Region region = Region::interval(0.0, 1.0);
  Index resolution = 0;
  FamilySpec family;
  std::vector<double> schedule;
  ReportOptions report;
  std::optional<double> homogeneity_tolerance;
  ProbeConfig probe;
  ScanConfig scan;
  SpectrumConfig spectrum;
  std::optional<std::filesystem::path> output;
};

/// Strict parse: unknown keys and invariant violations throw ConfigError.
///
/// Top-level keys: region, resolution, family, schedule, thresholds, probe,
/// scan, spectrum, output. See README for the full schema.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Geometric schedule start * ratio^i, i < count.
std::vector<double> geometric_schedule(double start, double ratio, Index count);

}  // namespace condlab::app
