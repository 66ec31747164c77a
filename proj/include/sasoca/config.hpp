#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sasoca/evolve.hpp"

namespace sasoca {

// A parsed experiment description: the EA parameters plus run bookkeeping.
// Defaults are the canonical task parameters (1-D, 35 cells, radius 2,
// population 500, 10% replacement, 100 ICs per evaluation, 10,000 updates,
// point rate 0.01, indel rate 0.05 with sizes in [16, 512), initial genomes
// of 10,000 codons carrying 16 genes, fitness window 10). overrides lists
// every key that was explicitly set, for the run manifest.
struct ExperimentConfig {
  EaConfig ea;
  std::string topology = "1d";
  int replicates = 1;
  std::filesystem::path out_dir = "runs";
  std::vector<std::string> overrides;
  bool seed_set = false;
};

// Flat key=value format, one pair per line; '#' starts a comment; blank
// lines ignored. Unknown keys, bad values and malformed lines raise
// ConfigError with the file name and line number. "topology" (1d/2d/3d)
// applies the canonical dims and radius for that geometry; explicit dims=
// or radius= override it regardless of line order.
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Applies one key=value pair (the same keys the file format accepts).
// source names the origin for error messages, e.g. "cfg:12" or "--set".
void apply_config_pair(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value, const std::string& source);

// Re-serializes the effective configuration as key=value lines.
std::string config_echo(const ExperimentConfig& cfg);

const char* ic_scheme_name(IcScheme s);
IcScheme ic_scheme_from_name(const std::string& name, const std::string& source);

}  // namespace sasoca
