#pragma once

// Job configuration: one JSON document per run, with command-line flags
// applied on top (last wins).

#include <string>
#include <utility>
#include <vector>

#include "hamlag/oracle.hpp"
#include "hamlag/params.hpp"
#include "hamlag/torus.hpp"
#include "hamlag/verify.hpp"

namespace hamlag::cli {

enum class ExportFormat { Csv, Json };
enum class Chart { Homogeneous, Affine0, Affine1, Affine2 };

struct ExportConfig {
  ExportFormat format = ExportFormat::Csv;
  Chart chart = Chart::Homogeneous;
  std::string path;
};

struct OracleConfig {
  oracle::OracleOptions options;
  double max_error = 1e-8;
};

struct JobConfig {
  params::SeedParameters seed;
  verify::SuiteOptions suite;
  ExportConfig export_;
  torus::SearchConfig torus;
  OracleConfig oracle;
  /// (field, factor) applied to the resolved constants in order.
  std::vector<std::pair<std::string, double>> perturb;
};

/// Parses a config document. Unknown keys and invalid values throw
/// Error(ConfigError).
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);

/// Parses "field=factor" and appends it to the config's perturbations.
void apply_perturb_flag(JobConfig& config, const std::string& flag);

std::string to_string(Chart chart);

}  // namespace hamlag::cli
