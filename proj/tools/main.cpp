#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sasoca/analysis.hpp"
#include "sasoca/ca.hpp"
#include "sasoca/config.hpp"
#include "sasoca/errors.hpp"
#include "sasoca/evolve.hpp"
#include "sasoca/genome.hpp"
#include "sasoca/render.hpp"
#include "sasoca/version.hpp"

namespace fs = std::filesystem;
using namespace sasoca;

namespace {

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Commands that take randomness either get an explicit --seed or generate
// one and print it, so every run is reproducible after the fact.
std::uint64_t settle_seed(std::optional<std::uint64_t> given) {
  if (given) return *given;
  std::uint64_t s = fresh_seed();
  std::cout << "seed not given; generated seed=" << s << "\n";
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

// Geometry options shared by every command that loads a genome.
struct GeoOpts {
  std::string topology = "1d";
  std::string dims;
  int radius = 0;

  Lattice lattice() const {
    Lattice lat = canonical_lattice(topology);
    if (!dims.empty() || radius > 0) {
      std::vector<int> d = lat.dims;
      if (!dims.empty()) {
        d.clear();
        std::istringstream is(dims);
        std::string part;
        while (std::getline(is, part, 'x')) d.push_back(std::stoi(part));
      }
      lat = make_lattice(d, radius > 0 ? radius : lat.radius);
    }
    return lat;
  }
};

void add_geo_opts(CLI::App* cmd, GeoOpts& geo) {
  cmd->add_option("--topology", geo.topology, "Task geometry: 1d, 2d or 3d")
      ->check(CLI::IsMember({"1d", "2d", "3d"}));
  cmd->add_option("--dims", geo.dims, "Explicit lattice extents, e.g. 35 or 7x7");
  cmd->add_option("--radius", geo.radius, "Explicit neighborhood radius");
}

// Loads a genome file and checks that its recorded layout width matches the
// requested lattice.
std::pair<Genome, Fsm> load_machine(const fs::path& genome_path, const Lattice& lat) {
  auto [genome, total_states] = read_genome_file(genome_path);
  StateLayout layout = StateLayout::for_inputs(lat.nbhd_size);
  if (total_states != layout.total()) {
    throw DataError(genome_path.string() + ": genome is for total_states=" +
                    std::to_string(total_states) + " but the requested lattice needs " +
                    std::to_string(layout.total()));
  }
  Fsm f = compile(genome, layout);
  return {std::move(genome), std::move(f)};
}

std::string command_manifest(const std::string& command, std::uint64_t seed,
                             const GeoOpts& geo, const fs::path& genome_path) {
  std::ostringstream m;
  m << "tool=sasoca " << kVersion << "\n";
  m << "command=" << command << "\n";
  m << "ordering=" << kOrderingConvention << "\n";
  m << "seed=" << seed << "\n";
  m << "topology=" << geo.topology << "\n";
  if (!geo.dims.empty()) m << "dims=" << geo.dims << "\n";
  if (geo.radius > 0) m << "radius=" << geo.radius << "\n";
  if (!genome_path.empty()) m << "genome=" << genome_path.string() << "\n";
  return m.str();
}

// ---------------------------------------------------------------- evolve --

struct EvolveOpts {
  std::string config_path;
  std::vector<std::string> sets;  // raw key=value overrides
  std::optional<std::uint64_t> seed;
  std::optional<int> updates, population, samples, replicates, jobs, checkpoint_every;
  std::string topology, out_dir;
};

fs::path rep_dir(const fs::path& out, int rep) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "rep_%03d", rep);
  return out / buf;
}

void write_dominant(const fs::path& dir, const Individual& dom,
                    const ExperimentConfig& cfg, const Lattice& lat,
                    std::uint64_t seed, int updates) {
  StateLayout layout = StateLayout::for_inputs(lat.nbhd_size);
  write_genome_file(dir / "dominant.genome", dom.genome, layout.total());
  nlohmann::json j{
      {"id", dom.id},
      {"parent_id", dom.parent_id},
      {"raw_fitness", dom.raw_fitness},
      {"effective_fitness", dom.effective_fitness()},
      {"lineage_window", dom.lineage_window},
      {"genome_length", dom.genome.size()},
      {"gates", scan_genes(dom.genome, layout.total()).size()},
      {"topology", cfg.topology},
      {"radius", cfg.ea.radius},
      {"dims", cfg.ea.dims},
      {"total_states", layout.total()},
      {"seed", seed},
      {"updates", updates},
      {"ordering", kOrderingConvention},
      {"tool_version", kVersion},
  };
  write_text(dir / "dominant.json", j.dump(2) + "\n");
}

// One replicate, writing runlog.csv incrementally so an interrupted run can
// be resumed from its last checkpoint.
void run_replicate(const ExperimentConfig& cfg, const fs::path& dir) {
  ensure_dir(dir);
  EaRun run(cfg.ea);

  std::ofstream log(dir / "runlog.csv");
  if (!log) throw IoError("cannot open " + (dir / "runlog.csv").string());
  log << kRunLogHeader;
  auto append = [&](const UpdateRecord& r) {
    log << runlog_row(r);
    log.flush();
    if (!log) throw IoError("write failed: " + (dir / "runlog.csv").string());
  };

  run.bootstrap();
  append(run.records().back());
  for (int u = 1; u <= cfg.ea.updates; ++u) {
    append(run.advance());
    if (cfg.ea.checkpoint_every > 0 && u % cfg.ea.checkpoint_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "ckpt_%06d", u);
      run.save_checkpoint(dir / "checkpoints" / name);
    }
  }
  write_dominant(dir, run.dominant(), cfg, run.lattice(), cfg.ea.seed, cfg.ea.updates);
}

int cmd_evolve(const EvolveOpts& opt) {
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) cfg = parse_config_file(opt.config_path);
  for (const std::string& kv : opt.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_config_pair(cfg, kv.substr(0, eq), kv.substr(eq + 1), "--set");
  }
  if (!opt.topology.empty()) apply_config_pair(cfg, "topology", opt.topology, "--topology");
  if (opt.updates) apply_config_pair(cfg, "updates", std::to_string(*opt.updates), "--updates");
  if (opt.population) apply_config_pair(cfg, "population", std::to_string(*opt.population), "--population");
  if (opt.samples) apply_config_pair(cfg, "samples_per_eval", std::to_string(*opt.samples), "--samples");
  if (opt.replicates) apply_config_pair(cfg, "replicates", std::to_string(*opt.replicates), "--replicates");
  if (opt.jobs) apply_config_pair(cfg, "jobs", std::to_string(*opt.jobs), "--jobs");
  if (opt.checkpoint_every) {
    apply_config_pair(cfg, "checkpoint_every", std::to_string(*opt.checkpoint_every), "--checkpoint-every");
  }
  if (!opt.out_dir.empty()) apply_config_pair(cfg, "out_dir", opt.out_dir, "--out");
  if (opt.seed) {
    apply_config_pair(cfg, "seed", std::to_string(*opt.seed), "--seed");
  } else if (!cfg.seed_set) {
    apply_config_pair(cfg, "seed", std::to_string(fresh_seed()), "generated");
    std::cout << "seed not given; generated seed=" << cfg.ea.seed << "\n";
  }

  ensure_dir(cfg.out_dir);
  const std::uint64_t base_seed = cfg.ea.seed;
  for (int rep = 0; rep < cfg.replicates; ++rep) {
    ExperimentConfig rep_cfg = cfg;
    rep_cfg.ea.seed = base_seed + static_cast<std::uint64_t>(rep);
    const fs::path dir = rep_dir(cfg.out_dir, rep);
    ensure_dir(dir);

    std::ostringstream m;
    m << "tool=sasoca " << kVersion << "\n";
    m << "command=evolve\n";
    m << "ordering=" << kOrderingConvention << "\n";
    m << "replicate=" << rep << "\n";
    m << "seed=" << rep_cfg.ea.seed << "\n";
    m << "overrides=";
    for (std::size_t i = 0; i < cfg.overrides.size(); ++i) {
      if (i) m << ',';
      m << cfg.overrides[i];
    }
    m << "\n--- effective config ---\n" << config_echo(rep_cfg);
    write_text(dir / "manifest.txt", m.str());

    run_replicate(rep_cfg, dir);
    std::cout << "replicate " << rep << ": done, artifacts in " << dir.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- resume --

int cmd_resume(const std::string& dir_str, std::optional<int> jobs) {
  const fs::path dir = dir_str;
  const fs::path ckroot = dir / "checkpoints";
  if (!fs::exists(ckroot)) throw DataError("no checkpoints under " + dir.string());
  std::vector<fs::path> ckpts;
  for (const auto& e : fs::directory_iterator(ckroot)) {
    if (e.is_directory()) ckpts.push_back(e.path());
  }
  if (ckpts.empty()) throw DataError("no checkpoints under " + ckroot.string());
  std::sort(ckpts.begin(), ckpts.end());

  EaRun run = EaRun::load_checkpoint(ckpts.back());
  const int from = run.update();
  const EaConfig& ea = run.config();
  std::cout << "resuming from update " << from << " (of " << ea.updates << ")\n";

  // Drop any runlog rows past the checkpoint, then continue appending; the
  // resumed run reproduces the uninterrupted log byte for byte.
  const fs::path log_path = dir / "runlog.csv";
  std::vector<std::string> kept;
  {
    std::ifstream in(log_path);
    if (!in) throw IoError("cannot open " + log_path.string());
    std::string line;
    std::getline(in, line);
    kept.push_back(line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const int u = std::stoi(line.substr(0, line.find(',')));
      if (u <= from) kept.push_back(line);
    }
  }
  std::ofstream log(log_path);
  if (!log) throw IoError("cannot rewrite " + log_path.string());
  for (const std::string& line : kept) log << line << "\n";

  if (jobs) run.set_jobs(*jobs);  // thread count never changes results

  for (int u = from + 1; u <= ea.updates; ++u) {
    const UpdateRecord& r = run.advance();
    log << runlog_row(r);
    log.flush();
    if (!log) throw IoError("write failed: " + log_path.string());
    if (ea.checkpoint_every > 0 && u % ea.checkpoint_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "ckpt_%06d", u);
      run.save_checkpoint(dir / "checkpoints" / name);
    }
  }

  ExperimentConfig cfg;
  cfg.ea = ea;
  cfg.topology = std::to_string(ea.dims.size()) + "d";
  write_dominant(dir, run.dominant(), cfg, run.lattice(), ea.seed, ea.updates);
  std::cout << "resumed run complete, artifacts in " << dir.string() << "\n";
  return 0;
}

// ------------------------------------------------------------- analyses --

struct AnalysisOpts {
  std::string genome_path;
  GeoOpts geo;
  int n = 1000;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int jobs = 1;
};

void emit_report(const AnalysisOpts& opt, const std::string& command,
                 std::uint64_t seed, const std::string& csv,
                 const std::string& json) {
  std::cout << csv;
  if (!opt.out_dir.empty()) {
    ensure_dir(opt.out_dir);
    write_text(fs::path(opt.out_dir) / (command + ".csv"), csv);
    write_text(fs::path(opt.out_dir) / (command + ".json"), json);
    write_text(fs::path(opt.out_dir) / "manifest.txt",
               command_manifest(command, seed, opt.geo, opt.genome_path));
  }
}

int cmd_eval(const AnalysisOpts& opt, const std::string& scheme_name_str) {
  const std::uint64_t seed = settle_seed(opt.seed);
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);
  IcScheme scheme = ic_scheme_from_name(scheme_name_str, "--scheme");
  const double frac = test_dominant(f, lat, opt.n, scheme, seed, opt.jobs);

  std::string csv = "n,scheme,fraction_correct\n" + std::to_string(opt.n) + "," +
                    scheme_name_str + "," + [&] {
                      char b[32];
                      std::snprintf(b, sizeof(b), "%.6f", frac);
                      return std::string(b);
                    }() + "\n";
  nlohmann::json j{{"n", opt.n}, {"scheme", scheme_name_str}, {"fraction_correct", frac}};
  emit_report(opt, "eval", seed, csv, j.dump(2) + "\n");
  return 0;
}

int cmd_density(const AnalysisOpts& opt, bool exact, std::uint64_t samples, int cap) {
  const std::uint64_t seed = exact ? 0 : settle_seed(opt.seed);
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);
  RuleDensityReport rep = rule_density(
      f, exact ? DensityMode::Exact : DensityMode::Sampled, samples, seed, cap);
  emit_report(opt, "density", seed, to_csv(rep), to_json(rep));
  return 0;
}

int cmd_knockout(const AnalysisOpts& opt) {
  const std::uint64_t seed = settle_seed(opt.seed);
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);
  KnockoutReport rep = knockout_hidden(f, lat, opt.n, seed, opt.jobs);
  emit_report(opt, "knockout", seed, to_csv(rep), to_json(rep));
  return 0;
}

int cmd_sop(const AnalysisOpts& opt) {
  const std::uint64_t seed = settle_seed(opt.seed);
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);
  SopReport rep = self_organization(f, lat, opt.n, seed, opt.jobs);
  emit_report(opt, "sop", seed, to_csv(rep), to_json(rep));
  return 0;
}

int cmd_scale(const AnalysisOpts& opt, const std::string& s_list) {
  const std::uint64_t seed = settle_seed(opt.seed);
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);

  std::vector<int> s_values;
  std::istringstream is(s_list);
  std::string part;
  while (std::getline(is, part, ',')) {
    try {
      s_values.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ConfigError("--s expects a comma-separated integer list, got '" + s_list + "'");
    }
  }
  ScalingReport rep = scaling_sweep(f, lat, s_values, opt.n, seed, opt.jobs);
  emit_report(opt, "scale", seed, to_csv(rep), to_json(rep));
  return 0;
}

// --------------------------------------------------------------- render --

// Reads a configuration as '0'/'1' characters (whitespace ignored) and
// checks the cell count against the lattice.
Configuration read_ic_file(const fs::path& path, const Lattice& lat) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open IC file " + path.string());
  Configuration c;
  c.dims = lat.dims;
  char ch;
  while (in.get(ch)) {
    if (ch == '0' || ch == '1') {
      c.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw DataError(path.string() + ": IC files hold only '0', '1' and whitespace");
    }
  }
  if (static_cast<int>(c.bits.size()) != lat.cells) {
    throw DataError(path.string() + ": IC has " + std::to_string(c.bits.size()) +
                    " cells but the lattice needs " + std::to_string(lat.cells));
  }
  return c;
}

int cmd_render(const AnalysisOpts& opt, const std::string& scheme_name_str,
               const std::string& format, bool hold_hidden, bool no_comm,
               const std::string& ic_path) {
  Lattice lat = opt.geo.lattice();
  auto [genome, f] = load_machine(opt.genome_path, lat);

  std::uint64_t seed = 0;
  Configuration ic;
  if (!ic_path.empty()) {
    ic = read_ic_file(ic_path, lat);
  } else {
    seed = settle_seed(opt.seed);
    Rng rng(derive_seed(seed, kStreamEval, 0));
    ic = gen_ic(lat, ic_scheme_from_name(scheme_name_str, "--scheme"), rng);
  }

  KnockoutMask mask;
  mask.hold_hidden_zero = hold_hidden;
  mask.hold_neighbor_inputs_zero = no_comm;

  Trajectory traj;
  CaOutcome out = run_ic(f, lat, ic, mask, &traj);

  const char* verdict = out.verdict == Verdict::AllOnes    ? "all-ones"
                        : out.verdict == Verdict::AllZeros ? "all-zeros"
                                                           : "unsettled";
  if (format == "ascii") {
    const std::string text = ascii_render(traj);
    if (opt.out_dir.empty()) {
      std::cout << text;
    } else {
      ensure_dir(opt.out_dir);
      export_trajectory_ascii(opt.out_dir, "traj", traj);
    }
  } else {
    if (opt.out_dir.empty()) throw ConfigError("--format pgm requires --out");
    ensure_dir(opt.out_dir);
    export_trajectory_pgm(opt.out_dir, "traj", traj);
  }
  if (!opt.out_dir.empty()) {
    write_text(fs::path(opt.out_dir) / "manifest.txt",
               command_manifest("render", seed, opt.geo, opt.genome_path));
  }
  std::cerr << "steps=" << out.steps_run << " verdict=" << verdict
            << " correct=" << (out.correct ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sasoca: evolving finite-state update machines for density classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sasoca ") + kVersion);

  EvolveOpts ev;
  auto* evolve = app.add_subcommand("evolve", "Run the evolutionary search");
  evolve->add_option("--config", ev.config_path, "key=value config file");
  evolve->add_option("--set", ev.sets, "Override any config key (key=value, repeatable)");
  evolve->add_option("--seed", ev.seed, "Master seed");
  evolve->add_option("--updates", ev.updates, "Number of updates");
  evolve->add_option("--population", ev.population, "Population size");
  evolve->add_option("--samples", ev.samples, "ICs per evaluation");
  evolve->add_option("--replicates", ev.replicates, "Independent replicate runs");
  evolve->add_option("--topology", ev.topology, "1d, 2d or 3d")
      ->check(CLI::IsMember({"1d", "2d", "3d"}));
  evolve->add_option("--out", ev.out_dir, "Output directory");
  evolve->add_option("--jobs", ev.jobs, "Worker threads (never changes results)");
  evolve->add_option("--checkpoint-every", ev.checkpoint_every,
                     "Checkpoint period in updates (0 = off)");

  std::string resume_dir;
  std::optional<int> resume_jobs;
  auto* resume = app.add_subcommand("resume", "Continue a run from its last checkpoint");
  resume->add_option("--dir", resume_dir, "Replicate directory (with checkpoints/)")
      ->required();
  resume->add_option("--jobs", resume_jobs, "Worker threads (never changes results)");

  AnalysisOpts eval_o;
  std::string eval_scheme = "binomial";
  auto* eval = app.add_subcommand("eval", "Held-out accuracy of a saved genome");
  eval->add_option("--genome", eval_o.genome_path, "Genome file")->required();
  add_geo_opts(eval, eval_o.geo);
  eval->add_option("--n", eval_o.n, "Number of ICs");
  eval->add_option("--scheme", eval_scheme, "IC scheme");
  eval->add_option("--seed", eval_o.seed, "Seed");
  eval->add_option("--out", eval_o.out_dir, "Report directory");
  eval->add_option("--jobs", eval_o.jobs, "Worker threads");

  AnalysisOpts den_o;
  bool den_exact = false;
  std::uint64_t den_samples = 1000000;
  int den_cap = 26;
  auto* density = app.add_subcommand("density", "Rule density of a saved genome");
  density->add_option("--genome", den_o.genome_path, "Genome file")->required();
  add_geo_opts(density, den_o.geo);
  density->add_flag("--exact", den_exact, "Enumerate all read-states");
  density->add_option("--samples", den_samples, "Sampled mode: number of states");
  density->add_option("--cap", den_cap, "Exact-mode bit cap");
  density->add_option("--seed", den_o.seed, "Seed (sampled mode)");
  density->add_option("--out", den_o.out_dir, "Report directory");

  AnalysisOpts ko_o;
  auto* knockout = app.add_subcommand("knockout", "Hidden-state knockout accuracy cost");
  knockout->add_option("--genome", ko_o.genome_path, "Genome file")->required();
  add_geo_opts(knockout, ko_o.geo);
  knockout->add_option("--n", ko_o.n, "Number of paired ICs");
  knockout->add_option("--seed", ko_o.seed, "Seed");
  knockout->add_option("--out", ko_o.out_dir, "Report directory");
  knockout->add_option("--jobs", ko_o.jobs, "Worker threads");

  AnalysisOpts sop_o;
  auto* sop = app.add_subcommand("sop", "Self-organization score");
  sop->add_option("--genome", sop_o.genome_path, "Genome file")->required();
  add_geo_opts(sop, sop_o.geo);
  sop->add_option("--n", sop_o.n, "Number of paired ICs");
  sop->add_option("--seed", sop_o.seed, "Seed");
  sop->add_option("--out", sop_o.out_dir, "Report directory");
  sop->add_option("--jobs", sop_o.jobs, "Worker threads");

  AnalysisOpts sc_o;
  std::string sc_list = "1,2,3,4,5,6,7,8,9";
  auto* scale = app.add_subcommand("scale", "Accuracy on scaled lattices");
  scale->add_option("--genome", sc_o.genome_path, "Genome file")->required();
  add_geo_opts(scale, sc_o.geo);
  scale->add_option("--s", sc_list, "Comma-separated scale factors");
  scale->add_option("--n", sc_o.n, "ICs per scale");
  scale->add_option("--seed", sc_o.seed, "Seed");
  scale->add_option("--out", sc_o.out_dir, "Report directory");
  scale->add_option("--jobs", sc_o.jobs, "Worker threads");

  AnalysisOpts rn_o;
  std::string rn_scheme = "binomial";
  std::string rn_format = "ascii";
  std::string rn_ic;
  bool rn_hold_hidden = false, rn_no_comm = false;
  auto* render = app.add_subcommand("render", "Space-time diagram of one IC");
  render->add_option("--genome", rn_o.genome_path, "Genome file")->required();
  add_geo_opts(render, rn_o.geo);
  render->add_option("--seed", rn_o.seed, "IC seed");
  render->add_option("--ic", rn_ic, "Explicit IC file of '0'/'1' cells (overrides --seed)");
  render->add_option("--scheme", rn_scheme, "IC scheme");
  render->add_option("--format", rn_format, "ascii or pgm")
      ->check(CLI::IsMember({"ascii", "pgm"}));
  render->add_flag("--hold-hidden-zero", rn_hold_hidden, "Mask hidden reads to 0");
  render->add_flag("--hold-neighbors-zero", rn_no_comm,
                   "Mask neighbor inputs (except self) to 0");
  render->add_option("--out", rn_o.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(ev);
    if (resume->parsed()) return cmd_resume(resume_dir, resume_jobs);
    if (eval->parsed()) return cmd_eval(eval_o, eval_scheme);
    if (density->parsed()) return cmd_density(den_o, den_exact, den_samples, den_cap);
    if (knockout->parsed()) return cmd_knockout(ko_o);
    if (sop->parsed()) return cmd_sop(sop_o);
    if (scale->parsed()) return cmd_scale(sc_o, sc_list);
    if (render->parsed()) {
      return cmd_render(rn_o, rn_scheme, rn_format, rn_hold_hidden, rn_no_comm, rn_ic);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TieError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
