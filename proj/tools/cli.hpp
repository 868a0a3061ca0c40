#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ramsey/model.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/quadrature.hpp"

namespace ramsey::cli {

inline constexpr const char* kVersion = RAMSEY_VERSION;

struct GridSpec {
  double min = -10.0;
  double max = 10.0;
  int count = 401;
  bool asymmetric = false;  // permits min != -max
};

struct RunConfig {
  ModelParams params;
  Geometry geometry;
  GridSpec grid;
  std::string evaluator = "auto";
  int n_terms = 2000;
  QuadratureConfig quad;
  MCConfig mc;
  std::vector<double> radii{2.0, 3.0, 5.0};
  std::string level = "fast";
  std::string format = "csv";
};

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kDivergence = 3 };

/// Sets one field by name; throws ConfigError on unknown keys or bad values.
void apply_field(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value text (with '#' comments) or a JSON object with the same keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& cfg);

/// Canonical key=value form; parse_config(dump_config(c)) reproduces c.
std::string dump_config(const RunConfig& cfg);

/// FNV-1a 64 of the canonical form.
std::uint64_t config_hash(const RunConfig& cfg);

GridSpec parse_grid(const std::string& spec);
double parse_radius(const std::string& text);
std::vector<double> parse_list(const std::string& text);
std::vector<double> grid_points(const GridSpec& g);

/// Entry point of the command-line tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramsey::cli
