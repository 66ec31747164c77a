// Acceptance gate for the density-classification toolkit: ten numbered
// checks, one [PASS]/[FAIL] line each, nonzero exit if any gating check
// fails. Reference behavior comes from the straight-line oracles in
// oracle.hpp, never from the library under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sasoca/analysis.hpp"
#include "sasoca/ca.hpp"
#include "sasoca/errors.hpp"
#include "sasoca/evolve.hpp"
#include "sasoca/fsm.hpp"
#include "sasoca/genome.hpp"
#include "sasoca/rng.hpp"

using namespace sasoca;

namespace {

int g_failures = 0;

// Runs one numbered check; body returns "" on pass, a reason on failure.
void criterion(int id, const std::string& label,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string reason;
  try {
    reason = body();
  } catch (const std::exception& e) {
    reason = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (reason.empty()) {
    std::printf("[PASS] %2d. %s (%.2f s)\n", id, label.c_str(), secs);
  } else {
    ++g_failures;
    std::printf("[FAIL] %2d. %s (%.2f s): %s\n", id, label.c_str(), secs,
                reason.c_str());
  }
  std::fflush(stdout);
}

Configuration seeded_binomial_ic(const Lattice& lat, std::uint64_t seed) {
  Rng rng(seed);
  return gen_ic(lat, IcScheme::Binomial, rng);
}

// Frame-by-frame comparison of run_ic against the ring-CA oracle.
std::string compare_against_ring_oracle(const std::vector<std::uint8_t>& table,
                                        int k, int radius, int n_ics,
                                        std::uint64_t seed_base) {
  Lattice lat = (radius == 2) ? canonical_lattice("1d") : make_lattice({35}, radius);
  StateLayout layout = StateLayout::for_inputs(lat.nbhd_size);
  Fsm f = rule_table_fsm(table, k, layout);
  const int steps = 2 * lat.cells;
  for (int i = 0; i < n_ics; ++i) {
    Configuration ic = seeded_binomial_ic(lat, seed_base + i);
    Trajectory traj;
    run_ic(f, lat, ic, {}, &traj);
    if (static_cast<int>(traj.frames.size()) != steps + 1) {
      return "expected " + std::to_string(steps + 1) + " frames, got " +
             std::to_string(traj.frames.size());
    }
    std::vector<std::uint8_t> cur = ic.bits;
    for (int t = 0; t <= steps; ++t) {
      if (traj.frames[t].bits != cur) {
        return "IC " + std::to_string(i) + " diverges at step " +
               std::to_string(t);
      }
      if (t < steps) cur = oracle::ca_step(cur, table, radius);
    }
  }
  return "";
}

EaConfig smoke_config(std::uint64_t seed) {
  EaConfig cfg;
  cfg.population_size = 100;
  cfg.samples_per_eval = 20;
  cfg.updates = 200;
  cfg.dims = {35};
  cfg.radius = 2;
  cfg.ic_scheme = IcScheme::UniformDensityFull;
  cfg.seed = seed;
  return cfg;
}

double best_raw_fitness(const RunLog& log) {
  double best = 0.0;
  for (const UpdateRecord& rec : log.records) {
    best = std::max(best, rec.max_raw_fitness);
  }
  return best;
}

std::string fraction6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

int main() {
  // ---- 1: rule 110 ----------------------------------------------------------
  criterion(1, "rule 110 matches the brute-force rule-table simulator", [] {
    return compare_against_ring_oracle(oracle::rule110(), 3, 1, 100, 9000);
  });

  // ---- 2: local majority + its rule density ---------------------------------
  criterion(2, "majority-of-5 matches, with exact rule density 1/2", [] {
    std::string r =
        compare_against_ring_oracle(oracle::majority5(), 5, 2, 100, 17000);
    if (!r.empty()) return r;
    StateLayout layout = StateLayout::for_inputs(5);
    Fsm f = rule_table_fsm(oracle::majority5(), 5, layout);
    RuleDensityReport rep = rule_density(f, DensityMode::Exact);
    if (rep.states_evaluated != (std::uint64_t{1} << 22)) {
      return std::string("expected 2^22 states, got ") +
             std::to_string(rep.states_evaluated);
    }
    if (rep.density != 0.5) {
      return "exact density " + fraction6(rep.density) + " != 0.500000";
    }
    return std::string();
  });

  // ---- 3: gene scanning -----------------------------------------------------
  criterion(3, "gene scanning agrees with a straight-line decoder", [] {
    const int state_counts[4] = {20, 22, 42, 44};
    for (int i = 0; i < 1000; ++i) {
      const int ts = state_counts[i % 4];
      Genome g;
      if (i % 2 == 0) {
        Rng rng(100 + i);
        g = random_genome(1000 + (i * 37) % 30000, 16, ts, rng);
      } else {
        Rng rng(50000 + i);
        g.codons.resize(1000 + (i * 53) % 9000);
        for (auto& c : g.codons) c = static_cast<std::uint8_t>(rng.u64() & 0xFF);
      }
      const std::vector<GeneSpan> got = scan_genes(g, ts);
      const std::vector<oracle::Gene> want = oracle::scan(g.codons, ts);
      if (got.size() != want.size()) {
        return "genome " + std::to_string(i) + ": " +
               std::to_string(got.size()) + " genes vs oracle " +
               std::to_string(want.size());
      }
      for (std::size_t j = 0; j < got.size(); ++j) {
        const bool same = got[j].start_index == want[j].start &&
                          got[j].n_in == want[j].n_in &&
                          got[j].n_out == want[j].n_out &&
                          got[j].input_ids == want[j].ins &&
                          got[j].output_ids == want[j].outs &&
                          got[j].table == want[j].table;
        if (!same) {
          return "genome " + std::to_string(i) + ": gene " + std::to_string(j) +
                 " decodes differently";
        }
      }
    }
    return std::string();
  });

  // ---- 4: symmetry invariances ----------------------------------------------
  criterion(4, "trajectories survive gate reorder, cell relabeling, shifts", [] {
    Lattice lat = canonical_lattice("1d");
    StateLayout layout = StateLayout::for_inputs(5);
    const int n = lat.cells;
    const int k = lat.nbhd_size;
    for (int m = 0; m < 50; ++m) {
      Rng grng(7000 + m);
      Genome genome = random_genome(1000 + (m * 613) % 20000, 16, 22, grng);
      Fsm f = compile(genome, layout);

      // A shuffled copy of the gate list.
      std::vector<LogicGate> gates = f.gates();
      Rng shuffle_rng(310 + m);
      for (std::size_t i = gates.size(); i > 1; --i) {
        std::swap(gates[i - 1], gates[shuffle_rng.uniform_int(i)]);
      }
      Fsm f_shuffled(layout, gates);

      // A random relabeling pi of the cells, applied to the neighbor table.
      std::vector<int> pi(n);
      for (int c = 0; c < n; ++c) pi[c] = c;
      Rng prng(9100 + m);
      for (std::size_t i = pi.size(); i > 1; --i) {
        std::swap(pi[i - 1], pi[prng.uniform_int(i)]);
      }
      Lattice relabeled = lat;
      for (int c = 0; c < n; ++c) {
        for (int j = 0; j < k; ++j) {
          relabeled.neighbors[static_cast<std::size_t>(pi[c]) * k + j] =
              pi[lat.row(c)[j]];
        }
      }

      for (int t = 0; t < 20; ++t) {
        Configuration ic = seeded_binomial_ic(lat, 40000 + m * 100 + t);
        Trajectory base;
        run_ic(f, lat, ic, {}, &base);

        Trajectory reordered;
        run_ic(f_shuffled, lat, ic, {}, &reordered);
        for (std::size_t step = 0; step < base.frames.size(); ++step) {
          if (reordered.frames[step].bits != base.frames[step].bits) {
            return "machine " + std::to_string(m) +
                   ": gate order changed the trajectory at step " +
                   std::to_string(step);
          }
        }

        Configuration relabeled_ic = ic;
        for (int c = 0; c < n; ++c) relabeled_ic.bits[pi[c]] = ic.bits[c];
        Trajectory permuted;
        run_ic(f, relabeled, relabeled_ic, {}, &permuted);
        for (std::size_t step = 0; step < base.frames.size(); ++step) {
          for (int c = 0; c < n; ++c) {
            if (permuted.frames[step].bits[pi[c]] != base.frames[step].bits[c]) {
              return "machine " + std::to_string(m) +
                     ": cell relabeling changed the trajectory";
            }
          }
        }

        const int shift = 1 + (m + t) % (n - 1);
        Configuration shifted_ic = ic;
        for (int c = 0; c < n; ++c) shifted_ic.bits[(c + shift) % n] = ic.bits[c];
        Trajectory shifted;
        run_ic(f, lat, shifted_ic, {}, &shifted);
        for (std::size_t step = 0; step < base.frames.size(); ++step) {
          for (int c = 0; c < n; ++c) {
            if (shifted.frames[step].bits[(c + shift) % n] !=
                base.frames[step].bits[c]) {
              return "machine " + std::to_string(m) +
                     ": a cyclic shift failed to commute with stepping";
            }
          }
        }
      }
    }
    return std::string();
  });

  // ---- 5 + 6 + 9 share the smoke evolution runs ------------------------------
  std::vector<RunLog> smoke_logs;  // seeds 42..51 in order

  criterion(5, "a smoke run is byte-identical at jobs=1 and jobs=8", [&] {
    EaConfig cfg = smoke_config(42);
    RunLog serial = run_ea(cfg);
    cfg.jobs = 8;
    RunLog threaded = run_ea(cfg);
    if (runlog_csv(serial.records) != runlog_csv(threaded.records)) {
      return std::string("run logs differ between jobs=1 and jobs=8");
    }
    if (serial.dominant.genome.codons != threaded.dominant.genome.codons) {
      return std::string("dominant genomes differ between jobs=1 and jobs=8");
    }
    smoke_logs.push_back(serial);
    return std::string();
  });

  criterion(6, "smoke evolution reaches raw fitness 0.55 on >= 8/10 seeds", [&] {
    if (smoke_logs.empty()) {
      // Criterion 5 failed before caching its run; redo seed 42 here.
      smoke_logs.push_back(run_ea(smoke_config(42)));
    }
    for (std::uint64_t seed = 43; seed <= 51; ++seed) {
      smoke_logs.push_back(run_ea(smoke_config(seed)));
    }
    int successes = 0;
    std::string bests;
    for (std::size_t i = 0; i < smoke_logs.size(); ++i) {
      const double best = best_raw_fitness(smoke_logs[i]);
      if (best >= 0.55) ++successes;
      if (!bests.empty()) bests += ' ';
      bests += fraction6(best);
    }
    if (successes < 8) {
      return std::to_string(successes) + "/10 seeds reached 0.55 (bests: " +
             bests + ")";
    }
    return std::string();
  });

  // ---- 7: knockout on memoryless machines ------------------------------------
  criterion(7, "hidden-state knockout is exactly zero without hidden reads", [] {
    Lattice lat = canonical_lattice("1d");
    StateLayout layout = StateLayout::for_inputs(5);
    std::vector<Fsm> machines;
    machines.push_back(rule_table_fsm(oracle::majority5(), 5, layout));
    machines.push_back(rule_table_fsm(oracle::rule110(), 3, layout));
    Rng rng(4242);
    std::vector<std::uint8_t> random_table(32);
    for (auto& b : random_table) b = static_cast<std::uint8_t>(rng.u64() & 1);
    machines.push_back(rule_table_fsm(random_table, 5, layout));
    for (std::size_t i = 0; i < machines.size(); ++i) {
      if (machines[i].reads_hidden()) {
        return "machine " + std::to_string(i) + " unexpectedly reads hidden state";
      }
      KnockoutReport rep = knockout_hidden(machines[i], lat, 1000, 555 + i);
      if (rep.delta_w != 0.0 || rep.w_normal != rep.w_knockout) {
        return "machine " + std::to_string(i) + ": delta_w = " +
               fraction6(rep.delta_w);
      }
    }
    return std::string();
  });

  // ---- 8: s_op algebra --------------------------------------------------------
  criterion(8, "self-organization score: range, sign, and 0/0 over 10^4 pairs", [] {
    if (s_op_value(0.0, 0.0) != 0.0) return std::string("0/0 must give 0");
    Rng rng(888);
    for (int i = 0; i < 10000; ++i) {
      const double f = rng.uniform01();
      const double f_nc = rng.uniform01();
      const double s = s_op_value(f, f_nc);
      if (s < -1.0 || s > 1.0) {
        return "pair " + std::to_string(i) + " escapes [-1, 1]";
      }
      if ((f > f_nc && s <= 0.0) || (f < f_nc && s >= 0.0) ||
          (f == f_nc && s != 0.0)) {
        return "pair " + std::to_string(i) + " breaks the sign rule";
      }
    }
    return std::string();
  });

  // ---- 9: sampled vs exact rule density on evolved machines -------------------
  criterion(9, "sampled rule density sits within 3 sigma of exact", [&] {
    if (smoke_logs.size() < 5) {
      return std::string("needs the criterion-6 smoke runs (unavailable)");
    }
    StateLayout layout = StateLayout::for_inputs(5);
    for (int i = 0; i < 5; ++i) {
      Fsm f = compile(smoke_logs[i].dominant.genome, layout);
      const RuleDensityReport exact = rule_density(f, DensityMode::Exact);
      const RuleDensityReport sampled =
          rule_density(f, DensityMode::Sampled, 1000000, 9900 + i);
      const double sigma =
          std::sqrt(exact.density * (1.0 - exact.density) / 1e6);
      if (std::abs(sampled.density - exact.density) > 3.0 * sigma + 1e-15) {
        return "dominant " + std::to_string(i) + ": exact " +
               fraction6(exact.density) + " vs sampled " +
               fraction6(sampled.density) + " exceeds 3 sigma";
      }
    }
    return std::string();
  });

  // ---- 10: scaling golden -----------------------------------------------------
  criterion(10, "scaling sweep replays the rule-table oracle, run for run", [] {
    Lattice base = canonical_lattice("1d");
    StateLayout layout = StateLayout::for_inputs(5);
    Fsm f = rule_table_fsm(oracle::majority5(), 5, layout);
    const std::vector<int> s_values{1, 3, 9};
    const int n = 1000;
    const std::uint64_t seed = 777;

    ScalingReport rep = scaling_sweep(f, base, s_values, n, seed);
    if (rep.rows.size() != 3 || rep.rows[2].s != 9 || rep.rows[2].cells != 315) {
      return std::string("s=9 must report 315 cells");
    }

    // Independent replay: the documented IC stream fed to the ring oracle.
    std::string oracle_csv = "s,cells,fraction_correct\n";
    for (int s : s_values) {
      Lattice lat = scaled_lattice(base, s);
      int correct = 0;
      for (int i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, kStreamEval, static_cast<std::uint64_t>(i)));
        Configuration ic = gen_ic(lat, IcScheme::Binomial, rng);
        const int cls = oracle::ca_classify(ic.bits, oracle::majority5(), 2);
        if (cls >= 0 && cls == majority(ic)) ++correct;
      }
      oracle_csv += std::to_string(s) + ',' + std::to_string(lat.cells) + ',' +
                    fraction6(static_cast<double>(correct) / n) + '\n';
    }

    const std::string got = to_csv(rep);
    if (got != oracle_csv) {
      return "library CSV disagrees with the live oracle replay:\n  got:\n" +
             got + "  oracle:\n" + oracle_csv;
    }

    const std::string golden_path =
        std::string(SASOCA_TEST_DATA_DIR) + "/scaling_majority5_golden.csv";
    if (std::getenv("SASOCA_WRITE_GOLDENS") != nullptr) {
      std::ofstream out(golden_path, std::ios::binary);
      out << oracle_csv;
      if (!out) return "cannot write golden " + golden_path;
    }
    const std::string golden = read_file(golden_path);
    if (golden.empty()) {
      return "golden file missing: " + golden_path +
             " (generate once with SASOCA_WRITE_GOLDENS=1)";
    }
    if (got != golden) {
      return "library CSV disagrees with the committed golden:\n  got:\n" + got +
             "  golden:\n" + golden;
    }
    return std::string();
  });

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
