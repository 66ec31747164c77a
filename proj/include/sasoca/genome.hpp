#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "sasoca/rng.hpp"

namespace sasoca {

// Genome length bounds enforced by the evolutionary pipeline: random_genome
// refuses lengths outside [kMinGenomeLength, kMaxGenomeLength), mutation
// operators skip indel events that would violate them, and the genome file
// parser rejects out-of-bounds files. The Genome value type itself stays
// permissive so small hand-built genomes can be used in tests and scans.
inline constexpr std::size_t kMinGenomeLength = 1000;
inline constexpr std::size_t kMaxGenomeLength = 40000;  // exclusive

// Two-codon start marker that opens every gene.
inline constexpr std::uint8_t kStartCodonA = 42;
inline constexpr std::uint8_t kStartCodonB = 213;

// Circular list of codons in [0, 255]. Position arithmetic wraps: a gene
// whose body runs past the end continues at index 0.
struct Genome {
  std::vector<std::uint8_t> codons;

  std::size_t size() const { return codons.size(); }
  std::uint8_t wrapped(std::size_t i) const { return codons[i % codons.size()]; }
};

// One decoded gene. input_ids/output_ids are state-variable indices in
// [0, layout_total_states); table holds the 2^n_in raw codons, row r giving
// the outputs for input pattern r (inputs read first-listed = MSB).
struct GeneSpan {
  std::size_t start_index = 0;  // index of the 42 codon
  int n_in = 0;
  int n_out = 0;
  std::vector<int> input_ids;
  std::vector<int> output_ids;
  std::vector<std::uint8_t> table;
};

struct MutationConfig {
  double point_rate = 0.01;   // per-codon substitution probability
  double indel_rate = 0.05;   // probability of one insertion and of one deletion
  int indel_size_min = 16;    // sizes drawn uniformly from [min, max)
  int indel_size_max = 512;
};

// Random genome of the given length with n_seed_genes non-overlapping genes
// stamped at random positions over a uniform-random background. Throws
// std::invalid_argument if length is out of bounds or the genes cannot fit.
Genome random_genome(std::size_t length, int n_seed_genes,
                     int layout_total_states, Rng& rng);

// All genes, in ascending start_index. Start codons are located circularly
// (the pair may straddle the end) and genes may overlap freely.
std::vector<GeneSpan> scan_genes(const Genome& g, int layout_total_states);

// Per-codon substitution with a fresh uniform byte (which may equal the old
// value, so the effective change rate is rate * 255/256).
Genome point_mutate(const Genome& g, const MutationConfig& cfg, Rng& rng);

// At most one insertion then at most one deletion. Sizes are drawn from
// [indel_size_min, indel_size_max). An event whose result would leave
// [kMinGenomeLength, kMaxGenomeLength) is skipped, but its random draws are
// still consumed so downstream draws do not shift.
Genome indel_mutate(const Genome& g, const MutationConfig& cfg, Rng& rng);

// Copies len codons starting at src (circular) and splices them in before
// position pos. pos may equal g.size() (append).
Genome insert_segment(const Genome& g, std::size_t src, std::size_t len,
                      std::size_t pos);

// Removes len codons starting at start, wrapping past the end; the result is
// the remaining arc. Requires len < g.size().
Genome delete_segment(const Genome& g, std::size_t start, std::size_t len);

// Genome file format (see docs/formats.md):
//   line 1: "sasoca-genome v1 total_states=<n>"
//   line 2: codons as space-separated decimal integers
// The reader rejects malformed headers, codons outside [0, 255], and lengths
// outside the genome bounds (DataError).
void write_genome_file(const std::filesystem::path& path, const Genome& g,
                       int total_states);
std::pair<Genome, int> read_genome_file(const std::filesystem::path& path);

}  // namespace sasoca
