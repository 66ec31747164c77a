#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sasoca/fsm.hpp"
#include "sasoca/rng.hpp"

namespace sasoca {

// Periodic d-dimensional lattice (d in {1,2,3}) with a Moore neighborhood of
// the given radius. Cells are indexed row-major (last dimension fastest) and
// each cell's neighbor list enumerates the (2r+1)^d offset cube in raster
// order, again last dimension fastest, so the zero offset (the cell itself)
// sits at raster position (nbhd_size - 1) / 2.
struct Lattice {
  std::vector<int> dims;
  int radius = 0;
  int cells = 0;
  int nbhd_size = 0;
  std::vector<std::int32_t> neighbors;  // cells * nbhd_size, row-major

  int self_offset_index() const { return (nbhd_size - 1) / 2; }
  const std::int32_t* row(int cell) const {
    return neighbors.data() + static_cast<std::size_t>(cell) * nbhd_size;
  }
};

Lattice make_lattice(const std::vector<int>& dims, int radius);

// The three canonical task geometries: "1d" = 35 cells radius 2,
// "2d" = 7x7 radius 2, "3d" = 3x3x5 radius 1.
Lattice canonical_lattice(const std::string& topology);

// Same topology with every extent multiplied by s (used by scaling sweeps).
Lattice scaled_lattice(const Lattice& base, int s);

struct Configuration {
  std::vector<std::uint8_t> bits;  // one per cell, row-major
  std::vector<int> dims;
};

// Initial-condition schemes. The uniform-density schemes first draw a target
// density rho, then place round(rho * cells) ones at shuffled positions;
// Binomial flips each cell independently at p = 1/2. Density-classification
// ICs must have a majority, so generation rejects exact ties and redraws
// from scratch.
enum class IcScheme {
  UniformDensityFull,  // rho ~ U[0, 1]
  UniformDensityLow,   // rho ~ U[0, 1/2]
  UniformDensityHigh,  // rho ~ U[1/2, 1]
  Binomial,
};

Configuration gen_ic(const Lattice& lat, IcScheme scheme, Rng& rng);

// Exact-count placement helper behind the uniform-density schemes: puts
// round(rho * cells) ones at positions chosen by a Fisher-Yates shuffle.
Configuration ic_from_density(const Lattice& lat, double rho, Rng& rng);

// 1 if ones outnumber zeros, 0 if zeros outnumber ones; throws TieError on
// an exact split.
int majority(const Configuration& c);

enum class Verdict { AllZeros, AllOnes, Unsettled };

struct CaOutcome {
  Configuration final;
  int steps_run = 0;    // actual synchronous updates executed, <= 2 * cells
  Verdict verdict = Verdict::Unsettled;
  bool correct = false;  // verdict matches majority(ic); ties never count
};

struct Trajectory {
  std::vector<Configuration> frames;  // frames[0] is the IC
};

// Runs the update machine on every cell for exactly M = 2 * cells
// synchronous steps and judges the step-M configuration: homogeneous
// all-ones (AllOnes) or all-zeros (AllZeros) counts as correct iff it equals
// the IC majority; anything else is Unsettled and incorrect.
//
// Optimization: only for a default mask and a machine that provably reads no
// hidden ids, a configuration that repeats between consecutive steps is a
// fixed point of the whole system, so the step-M configuration is already in
// hand and the loop exits early (never changing the verdict). Memory-bearing
// or masked runs always execute all M steps — a machine can look settled and
// still flip later through hidden state. When a trajectory is being recorded
// the loop always runs all M steps so every frame is materialized.
//
// mask.self_input_index < 0 is filled in from the lattice's self offset.
CaOutcome run_ic(const Fsm& f, const Lattice& lat, const Configuration& ic,
                 const KnockoutMask& mask = {}, Trajectory* trajectory = nullptr);

}  // namespace sasoca
