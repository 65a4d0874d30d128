#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minfib/catalog.hpp"
#include "minfib/fibre.hpp"

// Single-header nlohmann/json lives in vendor/.
#include "json.hpp"

namespace minfib {

using Json = nlohmann::ordered_json;

/// Names of the checks a verify run may request.
const std::vector<std::string>& known_checks();

/// Parsed, validated run configuration. Unknown keys anywhere in the file are
/// rejected; the seed is mandatory; all tolerance overrides must be positive.
struct RunConfig {
  std::uint64_t seed = 0;
  ManifoldSpec manifold{ManifoldKind::Sphere, 2};
  Json family;                 // family object, validated per id
  std::vector<Json> members;   // extra parameter sets for the same family id
  std::vector<std::string> checks;
  int points = 50;
  int fibre_points = 20;
  int directions = 10;
  Complex target{0.0, 0.0};
  std::map<std::string, double> tolerances;
  double step_first = 1e-4;
  double step_second = 1e-3;
  double step_curvature = 1e-2;
  std::optional<std::string> export_csv;
  std::optional<std::string> export_json;
  Json echo;  // effective config, re-serialised into reports

  static RunConfig from_json(const Json& j);
  static RunConfig from_file(const std::filesystem::path& path);

  double tolerance_or(const std::string& check, double fallback) const;
  CalculusOptions calculus_options() const;
  FibreOptions fibre_options() const;
};

/// Build the primary catalog entry (and the extra members) described by the
/// config. Throws ConfigError on malformed parameters and MixedFamilies when
/// a member disagrees with the primary predicted pair.
std::vector<CatalogEntry> build_entries(const RunConfig& config);

Complex parse_complex(const Json& j, const std::string& where);
Json complex_to_json(Complex z);

}  // namespace minfib
