#include "sasoca/ca.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sasoca/errors.hpp"

namespace sasoca {

Lattice make_lattice(const std::vector<int>& dims, int radius) {
  if (dims.empty() || dims.size() > 3) {
    throw std::invalid_argument("make_lattice: dims must have 1..3 entries");
  }
  if (radius < 1) throw std::invalid_argument("make_lattice: radius must be >= 1");
  for (int d : dims) {
    if (d < 2 * radius + 1) {
      throw std::invalid_argument(
          "make_lattice: extent " + std::to_string(d) + " < " +
          std::to_string(2 * radius + 1) +
          " (neighborhood would self-overlap)");
    }
  }

  Lattice lat;
  lat.dims = dims;
  lat.radius = radius;
  lat.cells = 1;
  for (int d : dims) lat.cells *= d;
  const int nd = static_cast<int>(dims.size());
  lat.nbhd_size = 1;
  for (int i = 0; i < nd; ++i) lat.nbhd_size *= 2 * radius + 1;

  // Offset cube in raster order, last dimension fastest; same order as the
  // row-major cell indexing, so the zero offset lands mid-list.
  std::vector<std::vector<int>> offsets;
  std::vector<int> off(nd, -radius);
  for (;;) {
    offsets.push_back(off);
    int i = nd - 1;
    while (i >= 0 && off[i] == radius) off[i--] = -radius;
    if (i < 0) break;
    ++off[i];
  }

  lat.neighbors.resize(static_cast<std::size_t>(lat.cells) * lat.nbhd_size);
  std::vector<int> coord(nd);
  for (int c = 0; c < lat.cells; ++c) {
    int rem = c;
    for (int i = nd - 1; i >= 0; --i) {
      coord[i] = rem % dims[i];
      rem /= dims[i];
    }
    for (int j = 0; j < lat.nbhd_size; ++j) {
      int idx = 0;
      for (int i = 0; i < nd; ++i) {
        int x = (coord[i] + offsets[j][i]) % dims[i];
        if (x < 0) x += dims[i];
        idx = idx * dims[i] + x;
      }
      lat.neighbors[static_cast<std::size_t>(c) * lat.nbhd_size + j] =
          static_cast<std::int32_t>(idx);
    }
  }
  return lat;
}

Lattice canonical_lattice(const std::string& topology) {
  if (topology == "1d") return make_lattice({35}, 2);
  if (topology == "2d") return make_lattice({7, 7}, 2);
  if (topology == "3d") return make_lattice({3, 3, 5}, 1);
  throw ConfigError("unknown topology '" + topology + "' (expected 1d, 2d or 3d)");
}

Lattice scaled_lattice(const Lattice& base, int s) {
  if (s < 1) throw std::invalid_argument("scaled_lattice: s must be >= 1");
  std::vector<int> dims = base.dims;
  for (int& d : dims) d *= s;
  return make_lattice(dims, base.radius);
}

Configuration ic_from_density(const Lattice& lat, double rho, Rng& rng) {
  if (rho < 0.0 || rho > 1.0) {
    throw std::invalid_argument("ic_from_density: rho outside [0, 1]");
  }
  auto n_ones = static_cast<std::size_t>(std::llround(rho * lat.cells));
  std::vector<std::int32_t> order(lat.cells);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  Configuration c;
  c.dims = lat.dims;
  c.bits.assign(lat.cells, 0);
  for (std::size_t i = 0; i < n_ones; ++i) c.bits[order[i]] = 1;
  return c;
}

namespace {

// Density for the half-range schemes: redraw the full-range uniform until it
// falls strictly inside the requested half (the boundary 0.5 would make the
// majority label ambiguous, so both halves exclude it).
double draw_density_below_half(Rng& rng) {
  for (;;) {
    const double rho = rng.uniform01();
    if (rho < 0.5) return rho;
  }
}

double draw_density_above_half(Rng& rng) {
  for (;;) {
    const double rho = rng.uniform01();
    if (rho > 0.5) return rho;
  }
}

}  // namespace

Configuration gen_ic(const Lattice& lat, IcScheme scheme, Rng& rng) {
  for (;;) {
    Configuration c;
    switch (scheme) {
      case IcScheme::UniformDensityFull:
        c = ic_from_density(lat, rng.uniform01(), rng);
        break;
      case IcScheme::UniformDensityLow:
        c = ic_from_density(lat, draw_density_below_half(rng), rng);
        break;
      case IcScheme::UniformDensityHigh:
        c = ic_from_density(lat, draw_density_above_half(rng), rng);
        break;
      case IcScheme::Binomial: {
        c.dims = lat.dims;
        c.bits.resize(lat.cells);
        for (auto& b : c.bits) b = static_cast<std::uint8_t>(rng.u64() & 1);
        break;
      }
    }
    // The task needs a defined majority: reject exact ties and redraw the
    // whole configuration (including a fresh density).
    int ones = 0;
    for (std::uint8_t b : c.bits) ones += b;
    if (2 * ones != lat.cells) return c;
  }
}

int majority(const Configuration& c) {
  int ones = 0;
  for (std::uint8_t b : c.bits) ones += b;
  const int n = static_cast<int>(c.bits.size());
  if (2 * ones == n) throw TieError("majority: exact tie on " + std::to_string(n) + " cells");
  return 2 * ones > n ? 1 : 0;
}

CaOutcome run_ic(const Fsm& f, const Lattice& lat, const Configuration& ic,
                 const KnockoutMask& mask, Trajectory* trajectory) {
  const StateLayout& layout = f.layout();
  if (layout.n_inputs != lat.nbhd_size) {
    throw std::invalid_argument("run_ic: machine expects " +
                                std::to_string(layout.n_inputs) +
                                " inputs but neighborhood has " +
                                std::to_string(lat.nbhd_size));
  }
  if (static_cast<int>(ic.bits.size()) != lat.cells) {
    throw std::invalid_argument("run_ic: configuration size mismatch");
  }

  KnockoutMask m = mask;
  if (m.hold_neighbor_inputs_zero && m.self_input_index < 0) {
    m.self_input_index = lat.self_offset_index();
  }
  const std::uint64_t read_mask = f.read_mask(m);
  // Early exit is only sound when the configuration alone determines the
  // dynamics: default mask and a machine that never reads hidden ids. Then a
  // configuration that maps to itself repeats forever, so the step-M verdict
  // is already decided. Memory-bearing or masked runs always take all M steps
  // (a machine can look settled and still flip later via hidden state).
  const bool allow_early_exit = !f.reads_hidden() && !m.hold_hidden_zero &&
                                !m.hold_neighbor_inputs_zero;

  const int cells = lat.cells;
  const int n_in = lat.nbhd_size;
  const int out_idx = layout.output_index();
  const int hidden_shift = layout.hidden_begin();
  const int M = 2 * cells;

  std::vector<std::uint8_t> cur(ic.bits), nxt(cells);
  std::vector<std::uint32_t> hid_cur(cells, 0), hid_nxt(cells);

  int ic_ones = 0;
  for (std::uint8_t b : cur) ic_ones += b;
  const bool tie = (2 * ic_ones == cells);

  if (trajectory) {
    trajectory->frames.clear();
    trajectory->frames.push_back(ic);
  }

  int steps = 0;
  for (int t = 1; t <= M; ++t) {
    const std::uint8_t* cb = cur.data();
    for (int c = 0; c < cells; ++c) {
      const std::int32_t* row = lat.row(c);
      std::uint64_t w = 0;
      for (int j = 0; j < n_in; ++j) {
        w |= static_cast<std::uint64_t>(cb[row[j]]) << j;
      }
      w |= static_cast<std::uint64_t>(hid_cur[c]) << hidden_shift;
      w &= read_mask;
      const std::uint64_t next = f.step_word(w);
      nxt[c] = static_cast<std::uint8_t>((next >> out_idx) & 1);
      hid_nxt[c] = static_cast<std::uint32_t>((next >> hidden_shift) & 0xFFFF);
    }
    steps = t;
    if (trajectory) {
      trajectory->frames.push_back(Configuration{nxt, lat.dims});
    } else if (allow_early_exit && nxt == cur) {
      // Fixed point of a memoryless unmasked machine: every later step
      // repeats this configuration, so the step-M verdict is already known.
      break;
    }
    cur.swap(nxt);
    hid_cur.swap(hid_nxt);
  }
  // Either the loop ran to t = M (cur was swapped to the newest state every
  // iteration) or it broke at a fixed point where cur and nxt agree on the
  // configuration; cur is the step-M configuration in both cases.

  CaOutcome out;
  out.steps_run = steps;
  out.final = Configuration{cur, lat.dims};
  int ones = 0;
  for (std::uint8_t b : cur) ones += b;
  if (ones == 0) {
    out.verdict = Verdict::AllZeros;
  } else if (ones == cells) {
    out.verdict = Verdict::AllOnes;
  } else {
    out.verdict = Verdict::Unsettled;
  }
  out.correct = !tie && ((out.verdict == Verdict::AllZeros && 2 * ic_ones < cells) ||
                         (out.verdict == Verdict::AllOnes && 2 * ic_ones > cells));
  return out;
}

}  // namespace sasoca
