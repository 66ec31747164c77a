#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sasoca/ca.hpp"
#include "sasoca/genome.hpp"

namespace sasoca {

inline constexpr std::uint64_t kNoParent = ~std::uint64_t{0};

struct Individual {
  Genome genome;
  double raw_fitness = 0.0;            // most recent evaluation
  std::vector<double> lineage_window;  // last <= window raw values along the
                                       // ancestor chain, oldest first
  std::uint64_t id = 0;
  std::uint64_t parent_id = kNoParent;

  // Mean of the lineage window: fitness smoothed over recent ancestors so a
  // lucky IC set does not dominate selection.
  double effective_fitness() const {
    if (lineage_window.empty()) return 0.0;
    double s = 0.0;
    for (double v : lineage_window) s += v;
    return s / static_cast<double>(lineage_window.size());
  }
};

struct EaConfig {
  int population_size = 500;
  double replacement_rate = 0.1;  // fraction culled and refilled per update
  int samples_per_eval = 100;     // ICs in the shared per-update set
  int updates = 10000;
  MutationConfig mutation{};
  std::vector<int> dims{35};
  int radius = 2;
  IcScheme ic_scheme = IcScheme::UniformDensityFull;
  std::uint64_t seed = 0;
  int initial_genome_length = 10000;
  int initial_genes = 16;
  int fitness_window = 10;
  int checkpoint_every = 0;  // 0 disables checkpointing
  int jobs = 1;
};

struct UpdateRecord {
  int update = 0;
  double max_eff_fitness = 0.0;
  double mean_eff_fitness = 0.0;
  double max_raw_fitness = 0.0;
  double mean_genome_len = 0.0;
};

struct RunLog {
  std::vector<UpdateRecord> records;  // updates 0..N inclusive
  Individual dominant;                // best effective_fitness at the end
};

// Fraction of n fresh ICs classified correctly. ICs are drawn sequentially
// from rng.
double evaluate(const Fsm& f, const Lattice& lat, IcScheme scheme,
                int n_samples, Rng& rng);

// Fraction of the given ICs classified correctly (the shared-set form used
// inside an update so every individual sees identical ICs).
double evaluate_on(const Fsm& f, const Lattice& lat,
                   std::span<const Configuration> ics);

// Held-out test: n ICs (default scheme Binomial), IC i drawn from the stream
// derive_seed(seed, kStreamEval, i). Evaluations parallelize over ICs.
double test_dominant(const Fsm& f, const Lattice& lat, int n,
                     IcScheme scheme, std::uint64_t seed, int jobs = 1);

// Fitness-proportional choice over `cumulative` (running sums of the
// weights, total = last entry). A zero total falls back to a uniform pick:
// proportional selection is undefined over zero mass.
std::size_t proportional_pick(const std::vector<double>& cumulative,
                              double total, Rng& rng);

// The steady-state engine. One update: draw the shared IC set, re-evaluate
// everyone, append to lineage windows, cull the round(rate * pop) lowest
// effective fitness (ties: older id culled first), refill by
// fitness-proportional parent selection (uniform fallback when all effective
// fitnesses are 0) and mutation (point then indel). All randomness is
// derived from (seed, update, stream, index), so a resumed run continues
// byte-identically and jobs never changes results.
class EaRun {
 public:
  explicit EaRun(const EaConfig& cfg);  // fresh random population, update 0
                                        // evaluation not yet run

  const EaConfig& config() const { return cfg_; }
  // Worker-thread count may be changed at any time; it never affects results.
  void set_jobs(int jobs) { cfg_.jobs = jobs; }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Individual>& population() const { return pop_; }
  int update() const { return update_; }
  const std::vector<UpdateRecord>& records() const { return records_; }

  // Evaluates the initial population on the update-0 IC set and logs the
  // update-0 record. Called once before the first advance().
  void bootstrap();

  // Runs one update (evaluate, log, cull, refill) and returns its record.
  const UpdateRecord& advance();

  // Best current effective_fitness; ties broken toward the smallest id.
  const Individual& dominant() const;

  // Checkpointing: a directory holding one genome file per individual plus
  // a manifest with the master seed, update index, id counters and lineage
  // windows — everything needed to continue byte-identically.
  void save_checkpoint(const std::filesystem::path& dir) const;
  static EaRun load_checkpoint(const std::filesystem::path& dir);

 private:
  EaRun() = default;

  EaConfig cfg_;
  Lattice lattice_;
  StateLayout layout_;
  std::vector<Individual> pop_;
  std::uint64_t next_id_ = 0;
  int update_ = -1;  // last completed update, -1 before bootstrap
  std::vector<UpdateRecord> records_;

  void evaluate_population(int u);
  void log_record();
  void cull_and_refill(int u);
};

// Full run: fresh population, bootstrap, cfg.updates updates, checkpoints
// every checkpoint_every updates into checkpoint_dir (when enabled and the
// directory is non-empty). updates = 0 yields just the update-0 record and
// the best initial individual as dominant.
RunLog run_ea(const EaConfig& cfg,
              const std::filesystem::path& checkpoint_dir = {});

// RunLog CSV: header update,max_eff_fitness,mean_eff_fitness,max_raw_fitness,
// mean_genome_len and one row per record.
extern const char* kRunLogHeader;  // header line including trailing newline
std::string runlog_row(const UpdateRecord& r);
std::string runlog_csv(const std::vector<UpdateRecord>& records);

}  // namespace sasoca
