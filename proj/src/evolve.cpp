#include "sasoca/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sasoca/errors.hpp"
#include "sasoca/parallel.hpp"
#include "sasoca/version.hpp"

namespace sasoca {

namespace {

const char* scheme_name(IcScheme s) {
  switch (s) {
    case IcScheme::UniformDensityFull: return "uniform_full";
    case IcScheme::UniformDensityLow: return "uniform_low";
    case IcScheme::UniformDensityHigh: return "uniform_high";
    case IcScheme::Binomial: return "binomial";
  }
  return "?";
}

IcScheme scheme_from_name(const std::string& name) {
  if (name == "uniform_full") return IcScheme::UniformDensityFull;
  if (name == "uniform_low") return IcScheme::UniformDensityLow;
  if (name == "uniform_high") return IcScheme::UniformDensityHigh;
  if (name == "binomial") return IcScheme::Binomial;
  throw DataError("unknown ic scheme '" + name + "'");
}

std::string dims_string(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

std::vector<int> dims_from_string(const std::string& s) {
  std::vector<int> dims;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, 'x')) dims.push_back(std::stoi(part));
  return dims;
}

void push_window(std::vector<double>& window, double value, int cap) {
  window.push_back(value);
  if (static_cast<int>(window.size()) > cap) window.erase(window.begin());
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

double evaluate(const Fsm& f, const Lattice& lat, IcScheme scheme,
                int n_samples, Rng& rng) {
  if (n_samples < 1) throw std::invalid_argument("evaluate: n_samples must be >= 1");
  int correct = 0;
  for (int i = 0; i < n_samples; ++i) {
    Configuration ic = gen_ic(lat, scheme, rng);
    if (run_ic(f, lat, ic).correct) ++correct;
  }
  return static_cast<double>(correct) / n_samples;
}

double evaluate_on(const Fsm& f, const Lattice& lat,
                   std::span<const Configuration> ics) {
  if (ics.empty()) throw std::invalid_argument("evaluate_on: no ICs");
  int correct = 0;
  for (const Configuration& ic : ics) {
    if (run_ic(f, lat, ic).correct) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ics.size());
}

double test_dominant(const Fsm& f, const Lattice& lat, int n,
                     IcScheme scheme, std::uint64_t seed, int jobs) {
  if (n < 1) throw std::invalid_argument("test_dominant: n must be >= 1");
  std::vector<std::uint8_t> ok(n, 0);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kStreamEval, i));
    Configuration ic = gen_ic(lat, scheme, rng);
    ok[i] = run_ic(f, lat, ic).correct ? 1 : 0;
  });
  int correct = 0;
  for (std::uint8_t b : ok) correct += b;
  return static_cast<double>(correct) / n;
}

EaRun::EaRun(const EaConfig& cfg) : cfg_(cfg) {
  if (cfg.population_size < 2) {
    throw std::invalid_argument("EaRun: population_size must be >= 2");
  }
  if (cfg.replacement_rate <= 0.0 || cfg.replacement_rate >= 1.0) {
    throw std::invalid_argument("EaRun: replacement_rate must be in (0, 1)");
  }
  if (cfg.samples_per_eval < 1 || cfg.fitness_window < 1) {
    throw std::invalid_argument("EaRun: samples_per_eval and fitness_window must be >= 1");
  }
  lattice_ = make_lattice(cfg.dims, cfg.radius);
  layout_ = StateLayout::for_inputs(lattice_.nbhd_size);

  pop_.resize(cfg.population_size);
  parallel_for(pop_.size(), cfg.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(cfg_.seed, kStreamInit, i));
    pop_[i].genome = random_genome(cfg_.initial_genome_length, cfg_.initial_genes,
                                   layout_.total(), rng);
    pop_[i].id = i;
  });
  next_id_ = pop_.size();
}

void EaRun::evaluate_population(int u) {
  std::vector<Configuration> ics(cfg_.samples_per_eval);
  for (int i = 0; i < cfg_.samples_per_eval; ++i) {
    Rng rng(derive_seed(cfg_.seed, kStreamIc, static_cast<std::uint64_t>(u), i));
    ics[i] = gen_ic(lattice_, cfg_.ic_scheme, rng);
  }
  // Every individual sees the identical IC set. Parallel workers only touch
  // their own slot, so the jobs count can never change results.
  std::vector<double> raw(pop_.size());
  parallel_for(pop_.size(), cfg_.jobs, [&](std::size_t i) {
    Fsm f = compile(pop_[i].genome, layout_);
    raw[i] = evaluate_on(f, lattice_, ics);
  });
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    pop_[i].raw_fitness = raw[i];
    push_window(pop_[i].lineage_window, raw[i], cfg_.fitness_window);
  }
}

void EaRun::log_record() {
  // Stats are taken right after evaluation, before culling, so they describe
  // the population exactly as it was scored this update.
  UpdateRecord r;
  r.update = update_;
  double sum_eff = 0.0, sum_len = 0.0;
  for (const Individual& ind : pop_) {
    const double eff = ind.effective_fitness();
    sum_eff += eff;
    sum_len += static_cast<double>(ind.genome.size());
    r.max_eff_fitness = std::max(r.max_eff_fitness, eff);
    r.max_raw_fitness = std::max(r.max_raw_fitness, ind.raw_fitness);
  }
  r.mean_eff_fitness = sum_eff / static_cast<double>(pop_.size());
  r.mean_genome_len = sum_len / static_cast<double>(pop_.size());
  records_.push_back(r);
}

std::size_t proportional_pick(const std::vector<double>& cumulative,
                              double total, Rng& rng) {
  if (cumulative.empty()) {
    throw std::invalid_argument("proportional_pick: empty weight list");
  }
  if (total > 0.0) {
    const double x = rng.uniform01() * total;
    return static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), x) -
        cumulative.begin());
  }
  // All weights zero: proportional selection is undefined, fall back to
  // uniform choice.
  return static_cast<std::size_t>(rng.uniform_int(cumulative.size()));
}

void EaRun::cull_and_refill(int u) {
  // At least one individual is always replaced, and at least one always
  // survives to parent the next batch.
  long k = std::lround(cfg_.replacement_rate * cfg_.population_size);
  k = std::clamp<long>(k, 1, cfg_.population_size - 1);

  // Lowest effective fitness goes first; on ties the older (smaller) id is
  // culled first.
  std::vector<std::size_t> order(pop_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ea = pop_[a].effective_fitness();
    const double eb = pop_[b].effective_fitness();
    if (ea != eb) return ea < eb;
    return pop_[a].id < pop_[b].id;
  });
  std::vector<bool> culled(pop_.size(), false);
  for (long i = 0; i < k; ++i) culled[order[i]] = true;

  std::vector<Individual> survivors;
  survivors.reserve(pop_.size());
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    if (!culled[i]) survivors.push_back(std::move(pop_[i]));
  }

  // Fitness-proportional parent selection over survivors; uniform fallback
  // when every effective fitness is zero.
  std::vector<double> cum(survivors.size());
  double total = 0.0;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    total += survivors[i].effective_fitness();
    cum[i] = total;
  }
  Rng select_rng(derive_seed(cfg_.seed, kStreamSelect, static_cast<std::uint64_t>(u)));

  std::vector<Individual> offspring;
  offspring.reserve(k);
  for (long j = 0; j < k; ++j) {
    const std::size_t pick = proportional_pick(cum, total, select_rng);
    const Individual& parent = survivors[pick];
    Rng mut_rng(derive_seed(cfg_.seed, kStreamMutate, static_cast<std::uint64_t>(u),
                            static_cast<std::uint64_t>(j)));
    Individual child;
    child.genome = indel_mutate(point_mutate(parent.genome, cfg_.mutation, mut_rng),
                                cfg_.mutation, mut_rng);
    child.lineage_window = parent.lineage_window;  // inherits ancestor history
    child.id = next_id_++;
    child.parent_id = parent.id;
    offspring.push_back(std::move(child));
  }

  pop_ = std::move(survivors);
  for (auto& ind : offspring) pop_.push_back(std::move(ind));
}

void EaRun::bootstrap() {
  if (update_ != -1) throw std::logic_error("EaRun::bootstrap called twice");
  evaluate_population(0);
  update_ = 0;
  log_record();
}

const UpdateRecord& EaRun::advance() {
  if (update_ < 0) throw std::logic_error("EaRun::advance before bootstrap");
  const int u = update_ + 1;
  evaluate_population(u);
  update_ = u;
  log_record();
  cull_and_refill(u);
  return records_.back();
}

const Individual& EaRun::dominant() const {
  if (pop_.empty()) throw std::logic_error("EaRun::dominant on empty population");
  const Individual* best = &pop_[0];
  for (const Individual& ind : pop_) {
    const double e = ind.effective_fitness();
    const double be = best->effective_fitness();
    if (e > be || (e == be && ind.id < best->id)) best = &ind;
  }
  return *best;
}

void EaRun::save_checkpoint(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create checkpoint dir " + dir.string());

  std::ofstream m(dir / "manifest.txt");
  if (!m) throw IoError("cannot write checkpoint manifest in " + dir.string());
  m << "sasoca-checkpoint v1\n";
  m << "version=" << kVersion << "\n";
  m << "ordering=" << kOrderingConvention << "\n";
  m << "update=" << update_ << "\n";
  m << "next_id=" << next_id_ << "\n";
  m << "cfg.population=" << cfg_.population_size << "\n";
  m << "cfg.replacement_rate=" << fmt("%.17g", cfg_.replacement_rate) << "\n";
  m << "cfg.samples_per_eval=" << cfg_.samples_per_eval << "\n";
  m << "cfg.updates=" << cfg_.updates << "\n";
  m << "cfg.point_rate=" << fmt("%.17g", cfg_.mutation.point_rate) << "\n";
  m << "cfg.indel_rate=" << fmt("%.17g", cfg_.mutation.indel_rate) << "\n";
  m << "cfg.indel_size_min=" << cfg_.mutation.indel_size_min << "\n";
  m << "cfg.indel_size_max=" << cfg_.mutation.indel_size_max << "\n";
  m << "cfg.dims=" << dims_string(cfg_.dims) << "\n";
  m << "cfg.radius=" << cfg_.radius << "\n";
  m << "cfg.ic_scheme=" << scheme_name(cfg_.ic_scheme) << "\n";
  m << "cfg.seed=" << cfg_.seed << "\n";
  m << "cfg.initial_genome_length=" << cfg_.initial_genome_length << "\n";
  m << "cfg.initial_genes=" << cfg_.initial_genes << "\n";
  m << "cfg.fitness_window=" << cfg_.fitness_window << "\n";
  m << "cfg.checkpoint_every=" << cfg_.checkpoint_every << "\n";
  m << "cfg.jobs=" << cfg_.jobs << "\n";
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    const Individual& ind = pop_[i];
    m << "ind " << i << ' ' << ind.id << ' ' << ind.parent_id << ' '
      << fmt("%.17g", ind.raw_fitness);
    for (double w : ind.lineage_window) m << ' ' << fmt("%.17g", w);
    m << "\n";
  }
  if (!m) throw IoError("write failed: checkpoint manifest in " + dir.string());

  char name[32];
  for (std::size_t i = 0; i < pop_.size(); ++i) {
    std::snprintf(name, sizeof(name), "ind_%04zu.genome", i);
    write_genome_file(dir / name, pop_[i].genome, layout_.total());
  }
}

EaRun EaRun::load_checkpoint(const std::filesystem::path& dir) {
  std::ifstream m(dir / "manifest.txt");
  if (!m) throw IoError("cannot open checkpoint manifest in " + dir.string());
  std::string line;
  if (!std::getline(m, line) || line != "sasoca-checkpoint v1") {
    throw DataError(dir.string() + ": not a checkpoint manifest");
  }

  EaRun run;
  EaConfig cfg;
  std::vector<std::tuple<std::size_t, std::uint64_t, std::uint64_t, double,
                         std::vector<double>>> inds;
  int update = -1;
  std::uint64_t next_id = 0;
  while (std::getline(m, line)) {
    if (line.empty()) continue;
    if (line.rfind("ind ", 0) == 0) {
      std::istringstream is(line.substr(4));
      std::size_t idx;
      std::uint64_t id, parent;
      double raw;
      is >> idx >> id >> parent >> raw;
      std::vector<double> window;
      double w;
      while (is >> w) window.push_back(w);
      if (!is.eof()) throw DataError(dir.string() + ": bad individual line");
      inds.emplace_back(idx, id, parent, raw, std::move(window));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    try {
      if (key == "update") update = std::stoi(val);
      else if (key == "next_id") next_id = std::stoull(val);
      else if (key == "cfg.population") cfg.population_size = std::stoi(val);
      else if (key == "cfg.replacement_rate") cfg.replacement_rate = std::stod(val);
      else if (key == "cfg.samples_per_eval") cfg.samples_per_eval = std::stoi(val);
      else if (key == "cfg.updates") cfg.updates = std::stoi(val);
      else if (key == "cfg.point_rate") cfg.mutation.point_rate = std::stod(val);
      else if (key == "cfg.indel_rate") cfg.mutation.indel_rate = std::stod(val);
      else if (key == "cfg.indel_size_min") cfg.mutation.indel_size_min = std::stoi(val);
      else if (key == "cfg.indel_size_max") cfg.mutation.indel_size_max = std::stoi(val);
      else if (key == "cfg.dims") cfg.dims = dims_from_string(val);
      else if (key == "cfg.radius") cfg.radius = std::stoi(val);
      else if (key == "cfg.ic_scheme") cfg.ic_scheme = scheme_from_name(val);
      else if (key == "cfg.seed") cfg.seed = std::stoull(val);
      else if (key == "cfg.initial_genome_length") cfg.initial_genome_length = std::stoi(val);
      else if (key == "cfg.initial_genes") cfg.initial_genes = std::stoi(val);
      else if (key == "cfg.fitness_window") cfg.fitness_window = std::stoi(val);
      else if (key == "cfg.checkpoint_every") cfg.checkpoint_every = std::stoi(val);
      else if (key == "cfg.jobs") cfg.jobs = std::stoi(val);
    } catch (const DataError&) {
      throw;
    } catch (const std::exception&) {
      throw DataError(dir.string() + ": bad manifest value for " + key);
    }
  }
  if (update < 0 || inds.empty()) {
    throw DataError(dir.string() + ": incomplete checkpoint manifest");
  }

  run.cfg_ = cfg;
  run.lattice_ = make_lattice(cfg.dims, cfg.radius);
  run.layout_ = StateLayout::for_inputs(run.lattice_.nbhd_size);
  run.update_ = update;
  run.next_id_ = next_id;
  run.pop_.resize(inds.size());
  char name[32];
  for (const auto& [idx, id, parent, raw, window] : inds) {
    if (idx >= run.pop_.size()) throw DataError(dir.string() + ": individual index out of range");
    std::snprintf(name, sizeof(name), "ind_%04zu.genome", idx);
    auto [genome, total_states] = read_genome_file(dir / name);
    if (total_states != run.layout_.total()) {
      throw DataError(dir.string() + ": genome total_states " +
                      std::to_string(total_states) + " does not match lattice layout " +
                      std::to_string(run.layout_.total()));
    }
    Individual& ind = run.pop_[idx];
    ind.genome = std::move(genome);
    ind.id = id;
    ind.parent_id = parent;
    ind.raw_fitness = raw;
    ind.lineage_window = window;
  }
  return run;
}

RunLog run_ea(const EaConfig& cfg, const std::filesystem::path& checkpoint_dir) {
  EaRun run(cfg);
  run.bootstrap();
  for (int u = 1; u <= cfg.updates; ++u) {
    run.advance();
    if (cfg.checkpoint_every > 0 && !checkpoint_dir.empty() &&
        u % cfg.checkpoint_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "ckpt_%06d", u);
      run.save_checkpoint(checkpoint_dir / name);
    }
  }
  RunLog log;
  log.records = run.records();
  log.dominant = run.dominant();
  return log;
}

const char* kRunLogHeader =
    "update,max_eff_fitness,mean_eff_fitness,max_raw_fitness,mean_genome_len\n";

std::string runlog_row(const UpdateRecord& r) {
  std::string out = std::to_string(r.update);
  out += ',';
  out += fmt("%.6f", r.max_eff_fitness);
  out += ',';
  out += fmt("%.6f", r.mean_eff_fitness);
  out += ',';
  out += fmt("%.6f", r.max_raw_fitness);
  out += ',';
  out += fmt("%.3f", r.mean_genome_len);
  out += '\n';
  return out;
}

std::string runlog_csv(const std::vector<UpdateRecord>& records) {
  std::string out = kRunLogHeader;
  for (const UpdateRecord& r : records) out += runlog_row(r);
  return out;
}

}  // namespace sasoca
