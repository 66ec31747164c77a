#include "sasoca/analysis.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "sasoca/errors.hpp"
#include "sasoca/parallel.hpp"

namespace sasoca {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Paired accuracy of the same Binomial ICs under two masks. IC i comes from
// the stream derive_seed(seed, kStreamEval, i) — the same discipline as
// test_dominant — and both arms see the identical configuration.
std::pair<double, double> paired_accuracy(const Fsm& f, const Lattice& lat,
                                          int n, std::uint64_t seed,
                                          const KnockoutMask& mask_a,
                                          const KnockoutMask& mask_b,
                                          int jobs) {
  if (n < 1) throw std::invalid_argument("paired accuracy: n must be >= 1");
  std::vector<std::uint8_t> ok_a(n, 0), ok_b(n, 0);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kStreamEval, i));
    Configuration ic = gen_ic(lat, IcScheme::Binomial, rng);
    ok_a[i] = run_ic(f, lat, ic, mask_a).correct ? 1 : 0;
    ok_b[i] = run_ic(f, lat, ic, mask_b).correct ? 1 : 0;
  });
  int a = 0, b = 0;
  for (int i = 0; i < n; ++i) {
    a += ok_a[i];
    b += ok_b[i];
  }
  return {static_cast<double>(a) / n, static_cast<double>(b) / n};
}

}  // namespace

RuleDensityReport rule_density(const Fsm& f, DensityMode mode,
                               std::uint64_t n_samples, std::uint64_t seed,
                               int exact_cap_bits) {
  RuleDensityReport rep;
  rep.mode = mode;
  rep.total_state_bits = f.layout().total();
  const int out_idx = f.layout().output_index();

  if (mode == DensityMode::Exact) {
    if (rep.total_state_bits > exact_cap_bits) {
      throw ConfigError("exact rule density needs 2^" +
                        std::to_string(rep.total_state_bits) +
                        " evaluations (cap 2^" + std::to_string(exact_cap_bits) +
                        "); use sampled mode with --samples 1000000");
    }
    const std::uint64_t n = std::uint64_t{1} << rep.total_state_bits;
    std::uint64_t ones = 0;
    for (std::uint64_t w = 0; w < n; ++w) {
      ones += (f.step_word(w) >> out_idx) & 1;
    }
    rep.states_evaluated = n;
    rep.density = static_cast<double>(ones) / static_cast<double>(n);
    return rep;
  }

  if (n_samples == 0) throw std::invalid_argument("rule_density: n_samples must be >= 1");
  const std::uint64_t mask = (std::uint64_t{1} << rep.total_state_bits) - 1;
  Rng rng(derive_seed(seed, kStreamDensity));
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    ones += (f.step_word(rng.u64() & mask) >> out_idx) & 1;
  }
  rep.states_evaluated = n_samples;
  rep.density = static_cast<double>(ones) / static_cast<double>(n_samples);
  return rep;
}

KnockoutReport knockout_hidden(const Fsm& f, const Lattice& lat, int n,
                               std::uint64_t seed, int jobs) {
  KnockoutMask normal;
  KnockoutMask knockout;
  knockout.hold_hidden_zero = true;
  auto [w_normal, w_knockout] = paired_accuracy(f, lat, n, seed, normal, knockout, jobs);
  return KnockoutReport{n, w_normal, w_knockout, w_normal - w_knockout};
}

double s_op_value(double f, double f_nc) {
  const double denom = f + f_nc;
  if (denom == 0.0) return 0.0;
  return (f - f_nc) / denom;
}

SopReport self_organization(const Fsm& f, const Lattice& lat, int n,
                            std::uint64_t seed, int jobs) {
  KnockoutMask normal;
  KnockoutMask no_comm;
  no_comm.hold_neighbor_inputs_zero = true;  // self slot filled in by run_ic
  auto [acc, acc_nc] = paired_accuracy(f, lat, n, seed, normal, no_comm, jobs);
  return SopReport{n, acc, acc_nc, s_op_value(acc, acc_nc)};
}

ScalingReport scaling_sweep(const Fsm& f, const Lattice& base,
                            const std::vector<int>& s_values, int n,
                            std::uint64_t seed, int jobs) {
  if (s_values.empty()) throw std::invalid_argument("scaling_sweep: no s values");
  ScalingReport rep;
  rep.n = n;
  for (int s : s_values) {
    Lattice lat = scaled_lattice(base, s);
    double frac = test_dominant(f, lat, n, IcScheme::Binomial, seed, jobs);
    rep.rows.push_back(ScalingRow{s, lat.cells, frac});
  }
  return rep;
}

std::string to_csv(const RuleDensityReport& r) {
  std::string out = "mode,total_state_bits,states_evaluated,density\n";
  out += (r.mode == DensityMode::Exact) ? "exact" : "sampled";
  out += ',' + std::to_string(r.total_state_bits);
  out += ',' + std::to_string(r.states_evaluated);
  out += ',' + fmt("%.9f", r.density) + '\n';
  return out;
}

std::string to_csv(const KnockoutReport& r) {
  return "n,w_normal,w_knockout,delta_w\n" + std::to_string(r.n) + ',' +
         fmt("%.6f", r.w_normal) + ',' + fmt("%.6f", r.w_knockout) + ',' +
         fmt("%.6f", r.delta_w) + '\n';
}

std::string to_csv(const SopReport& r) {
  return "n,f,f_nc,s_op\n" + std::to_string(r.n) + ',' + fmt("%.6f", r.f) +
         ',' + fmt("%.6f", r.f_nc) + ',' + fmt("%.6f", r.s_op) + '\n';
}

std::string to_csv(const ScalingReport& r) {
  std::string out = "s,cells,fraction_correct\n";
  for (const ScalingRow& row : r.rows) {
    out += std::to_string(row.s) + ',' + std::to_string(row.cells) + ',' +
           fmt("%.6f", row.fraction_correct) + '\n';
  }
  return out;
}

std::string to_json(const RuleDensityReport& r) {
  nlohmann::json j{{"mode", r.mode == DensityMode::Exact ? "exact" : "sampled"},
                   {"total_state_bits", r.total_state_bits},
                   {"states_evaluated", r.states_evaluated},
                   {"density", r.density}};
  return j.dump(2) + "\n";
}

std::string to_json(const KnockoutReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"w_normal", r.w_normal},
                   {"w_knockout", r.w_knockout},
                   {"delta_w", r.delta_w}};
  return j.dump(2) + "\n";
}

std::string to_json(const SopReport& r) {
  nlohmann::json j{{"n", r.n}, {"f", r.f}, {"f_nc", r.f_nc}, {"s_op", r.s_op}};
  return j.dump(2) + "\n";
}

std::string to_json(const ScalingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ScalingRow& row : r.rows) {
    rows.push_back({{"s", row.s},
                    {"cells", row.cells},
                    {"fraction_correct", row.fraction_correct}});
  }
  nlohmann::json j{{"n", r.n}, {"rows", rows}};
  return j.dump(2) + "\n";
}

}  // namespace sasoca
