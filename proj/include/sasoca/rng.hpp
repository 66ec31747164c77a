#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sasoca {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard, so sequences are reproducible across platforms and compilers.
// Distribution shaping (uniform_int, uniform01, shuffle) is implemented here
// rather than with <random> adaptors because those adaptors are
// implementation-defined and would break byte-identical run logs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t u64() { return engine_(); }

  std::uint8_t byte() { return static_cast<std::uint8_t>(u64() & 0xFF); }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform_int(std::uint64_t bound) { return u64() % bound; }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(u64() >> 11) * 0x1.0p-53;
  }

  // Fisher-Yates; self-contained so permutations are portable.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Derives an independent stream seed from a master seed plus context words
// (update index, purpose tag, item index, ...). Every randomized stage of a
// run draws from its own derived stream, so evaluation order and thread
// count cannot change results and resuming from a checkpoint only needs the
// master seed and the update index.
inline std::uint64_t derive_seed(std::uint64_t seed) {
  return detail::splitmix64(seed);
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t next, Rest... rest) {
  return derive_seed(detail::splitmix64(seed ^ detail::splitmix64(next)), rest...);
}

// Purpose tags for derived streams. Fixed values: they are part of the
// reproducibility contract (a checkpointed run must re-derive identical
// streams after resume).
enum : std::uint64_t {
  kStreamInit = 1,    // initial population genomes
  kStreamIc = 2,      // per-update shared IC sets
  kStreamSelect = 3,  // parent selection draws
  kStreamMutate = 4,  // per-offspring mutation draws
  kStreamEval = 5,    // held-out evaluation / analysis ICs
  kStreamDensity = 6, // sampled rule-density states
};

}  // namespace sasoca
