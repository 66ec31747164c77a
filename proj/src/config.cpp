#include "sasoca/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sasoca/errors.hpp"

namespace sasoca {

const char* ic_scheme_name(IcScheme s) {
  switch (s) {
    case IcScheme::UniformDensityFull: return "uniform_full";
    case IcScheme::UniformDensityLow: return "uniform_low";
    case IcScheme::UniformDensityHigh: return "uniform_high";
    case IcScheme::Binomial: return "binomial";
  }
  return "?";
}

IcScheme ic_scheme_from_name(const std::string& name, const std::string& source) {
  if (name == "uniform_full") return IcScheme::UniformDensityFull;
  if (name == "uniform_low") return IcScheme::UniformDensityLow;
  if (name == "uniform_high") return IcScheme::UniformDensityHigh;
  if (name == "binomial") return IcScheme::Binomial;
  throw ConfigError(source + ": unknown ic_scheme '" + name +
                    "' (uniform_full, uniform_low, uniform_high, binomial)");
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& v, const std::string& key,
                    const std::string& source) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(source + ": bad integer for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& v, const std::string& key,
                    const std::string& source) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(source + ": bad number for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key,
                        const std::string& source) {
  try {
    std::size_t used = 0;
    std::uint64_t x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(source + ": bad unsigned integer for " + key + ": '" + v + "'");
  }
}

std::vector<int> parse_dims(const std::string& v, const std::string& source) {
  std::vector<int> dims;
  std::istringstream is(v);
  std::string part;
  while (std::getline(is, part, 'x')) {
    dims.push_back(static_cast<int>(parse_int(part, "dims", source)));
  }
  if (dims.empty() || dims.size() > 3) {
    throw ConfigError(source + ": dims must have 1..3 extents, e.g. 35 or 7x7");
  }
  return dims;
}

bool has_override(const ExperimentConfig& cfg, const std::string& key) {
  return std::find(cfg.overrides.begin(), cfg.overrides.end(), key) !=
         cfg.overrides.end();
}

}  // namespace

void apply_config_pair(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value, const std::string& source) {
  if (key == "topology") {
    Lattice lat = [&] {
      try {
        return canonical_lattice(value);
      } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
      }
    }();
    cfg.topology = value;
    // Canonical geometry, unless dims/radius were themselves overridden
    // (order-independent: explicit dims/radius always win).
    if (!has_override(cfg, "dims")) cfg.ea.dims = lat.dims;
    if (!has_override(cfg, "radius")) cfg.ea.radius = lat.radius;
  } else if (key == "dims") {
    cfg.ea.dims = parse_dims(value, source);
  } else if (key == "radius") {
    cfg.ea.radius = static_cast<int>(parse_int(value, key, source));
  } else if (key == "population") {
    cfg.ea.population_size = static_cast<int>(parse_int(value, key, source));
  } else if (key == "replacement_rate") {
    cfg.ea.replacement_rate = parse_double(value, key, source);
  } else if (key == "samples_per_eval") {
    cfg.ea.samples_per_eval = static_cast<int>(parse_int(value, key, source));
  } else if (key == "updates") {
    cfg.ea.updates = static_cast<int>(parse_int(value, key, source));
  } else if (key == "point_rate") {
    cfg.ea.mutation.point_rate = parse_double(value, key, source);
  } else if (key == "indel_rate") {
    cfg.ea.mutation.indel_rate = parse_double(value, key, source);
  } else if (key == "indel_size_min") {
    cfg.ea.mutation.indel_size_min = static_cast<int>(parse_int(value, key, source));
  } else if (key == "indel_size_max") {
    cfg.ea.mutation.indel_size_max = static_cast<int>(parse_int(value, key, source));
  } else if (key == "ic_scheme") {
    cfg.ea.ic_scheme = ic_scheme_from_name(value, source);
  } else if (key == "seed") {
    cfg.ea.seed = parse_u64(value, key, source);
    cfg.seed_set = true;
  } else if (key == "initial_genome_length") {
    cfg.ea.initial_genome_length = static_cast<int>(parse_int(value, key, source));
  } else if (key == "initial_genes") {
    cfg.ea.initial_genes = static_cast<int>(parse_int(value, key, source));
  } else if (key == "fitness_window") {
    cfg.ea.fitness_window = static_cast<int>(parse_int(value, key, source));
  } else if (key == "checkpoint_every") {
    cfg.ea.checkpoint_every = static_cast<int>(parse_int(value, key, source));
  } else if (key == "jobs") {
    cfg.ea.jobs = static_cast<int>(parse_int(value, key, source));
  } else if (key == "replicates") {
    cfg.replicates = static_cast<int>(parse_int(value, key, source));
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else {
    throw ConfigError(source + ": unknown key '" + key + "'");
  }
  if (!has_override(cfg, key)) cfg.overrides.push_back(key);
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file " + path.string());
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string source = path.filename().string() + ":" + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ": expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ": empty key");
    apply_config_pair(cfg, key, value, source);
  }
  return cfg;
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "topology=" << cfg.topology << "\n";
  out << "dims=";
  for (std::size_t i = 0; i < cfg.ea.dims.size(); ++i) {
    if (i) out << 'x';
    out << cfg.ea.dims[i];
  }
  out << "\n";
  out << "radius=" << cfg.ea.radius << "\n";
  out << "population=" << cfg.ea.population_size << "\n";
  out << "replacement_rate=" << cfg.ea.replacement_rate << "\n";
  out << "samples_per_eval=" << cfg.ea.samples_per_eval << "\n";
  out << "updates=" << cfg.ea.updates << "\n";
  out << "point_rate=" << cfg.ea.mutation.point_rate << "\n";
  out << "indel_rate=" << cfg.ea.mutation.indel_rate << "\n";
  out << "indel_size_min=" << cfg.ea.mutation.indel_size_min << "\n";
  out << "indel_size_max=" << cfg.ea.mutation.indel_size_max << "\n";
  out << "ic_scheme=" << ic_scheme_name(cfg.ea.ic_scheme) << "\n";
  out << "seed=" << cfg.ea.seed << "\n";
  out << "initial_genome_length=" << cfg.ea.initial_genome_length << "\n";
  out << "initial_genes=" << cfg.ea.initial_genes << "\n";
  out << "fitness_window=" << cfg.ea.fitness_window << "\n";
  out << "checkpoint_every=" << cfg.ea.checkpoint_every << "\n";
  out << "jobs=" << cfg.ea.jobs << "\n";
  out << "replicates=" << cfg.replicates << "\n";
  out << "out_dir=" << cfg.out_dir.string() << "\n";
  return out.str();
}

}  // namespace sasoca
