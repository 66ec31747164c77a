#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sasoca/ca.hpp"
#include "sasoca/evolve.hpp"

namespace sasoca {

enum class DensityMode { Exact, Sampled };

// Fraction of read-states the machine maps to output 1. The read vector
// here is the full state word — neighborhood inputs, the output slot bit
// and all 16 hidden bits — enumerated exhaustively (Exact, refused above
// exact_cap_bits) or sampled uniformly (Sampled).
struct RuleDensityReport {
  DensityMode mode = DensityMode::Exact;
  int total_state_bits = 0;
  std::uint64_t states_evaluated = 0;
  double density = 0.0;
};

RuleDensityReport rule_density(const Fsm& f, DensityMode mode,
                               std::uint64_t n_samples = 1000000,
                               std::uint64_t seed = 0,
                               int exact_cap_bits = 26);

// Paired hidden-state knockout: the same Binomial ICs are classified once
// normally and once with every hidden read held at 0; delta_w is the
// accuracy cost of losing memory.
struct KnockoutReport {
  int n = 0;
  double w_normal = 0.0;
  double w_knockout = 0.0;
  double delta_w = 0.0;
};

KnockoutReport knockout_hidden(const Fsm& f, const Lattice& lat, int n,
                               std::uint64_t seed, int jobs = 1);

// Self-organization score from paired runs: f with full neighborhood
// communication, f_nc with every neighbor input except the self slot held
// at 0. s_op = (f - f_nc) / (f + f_nc), defined as 0 when both terms are 0.
struct SopReport {
  int n = 0;
  double f = 0.0;
  double f_nc = 0.0;
  double s_op = 0.0;
};

double s_op_value(double f, double f_nc);

SopReport self_organization(const Fsm& f, const Lattice& lat, int n,
                            std::uint64_t seed, int jobs = 1);

// Held-out accuracy on s-scaled lattices (every extent multiplied by s),
// n Binomial ICs per row drawn from the same derived streams test_dominant
// uses, so the s = 1 row reproduces test_dominant bit-for-bit.
struct ScalingRow {
  int s = 0;
  int cells = 0;
  double fraction_correct = 0.0;
};

struct ScalingReport {
  int n = 0;
  std::vector<ScalingRow> rows;
};

ScalingReport scaling_sweep(const Fsm& f, const Lattice& base,
                            const std::vector<int>& s_values, int n,
                            std::uint64_t seed, int jobs = 1);

// Every report serializes to CSV (one row per measurement) and a JSON
// summary; schemas in docs/formats.md.
std::string to_csv(const RuleDensityReport& r);
std::string to_csv(const KnockoutReport& r);
std::string to_csv(const SopReport& r);
std::string to_csv(const ScalingReport& r);
std::string to_json(const RuleDensityReport& r);
std::string to_json(const KnockoutReport& r);
std::string to_json(const SopReport& r);
std::string to_json(const ScalingReport& r);

}  // namespace sasoca
