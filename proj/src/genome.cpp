#include "sasoca/genome.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sasoca/errors.hpp"

namespace sasoca {

namespace {

// Gene body length for given arity codons, start codons included:
// [42, 213, fanin, fanout, n_in ids, n_out ids, 2^n_in table entries].
std::size_t gene_length(int n_in, int n_out) {
  return 4 + static_cast<std::size_t>(n_in) + static_cast<std::size_t>(n_out) +
         (std::size_t{1} << n_in);
}

}  // namespace

Genome random_genome(std::size_t length, int n_seed_genes,
                     int layout_total_states, Rng& rng) {
  if (length < kMinGenomeLength || length >= kMaxGenomeLength) {
    throw std::invalid_argument("random_genome: length " +
                                std::to_string(length) + " outside [" +
                                std::to_string(kMinGenomeLength) + ", " +
                                std::to_string(kMaxGenomeLength) + ")");
  }
  if (n_seed_genes < 0) {
    throw std::invalid_argument("random_genome: negative n_seed_genes");
  }
  if (layout_total_states <= 0) {
    throw std::invalid_argument("random_genome: layout_total_states must be positive");
  }

  Genome g;
  g.codons.resize(length);
  for (auto& c : g.codons) c = rng.byte();

  // Stamp whole genes over the random background at non-overlapping
  // positions so a fresh genome decodes to exactly n_seed_genes genes plus
  // whatever start-codon pairs the background happens to contain.
  std::vector<bool> used(length, false);
  for (int k = 0; k < n_seed_genes; ++k) {
    std::uint8_t fanin = rng.byte();
    std::uint8_t fanout = rng.byte();
    int n_in = 1 + fanin % 4;
    int n_out = 1 + fanout % 4;
    std::size_t glen = gene_length(n_in, n_out);
    if (glen > length) {
      throw std::invalid_argument("random_genome: gene longer than genome");
    }

    std::size_t start = 0;
    bool placed = false;
    for (int attempt = 0; attempt < 100000; ++attempt) {
      start = rng.uniform_int(length);
      bool clash = false;
      for (std::size_t j = 0; j < glen && !clash; ++j) {
        clash = used[(start + j) % length];
      }
      if (!clash) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::invalid_argument("random_genome: cannot place seed genes without overlap");
    }

    std::size_t p = start;
    auto put = [&](std::uint8_t v) {
      used[p % length] = true;
      g.codons[p % length] = v;
      ++p;
    };
    put(kStartCodonA);
    put(kStartCodonB);
    put(fanin);
    put(fanout);
    for (int j = 0; j < n_in; ++j) put(rng.byte());
    for (int j = 0; j < n_out; ++j) put(rng.byte());
    for (std::size_t j = 0; j < (std::size_t{1} << n_in); ++j) put(rng.byte());
  }
  return g;
}

std::vector<GeneSpan> scan_genes(const Genome& g, int layout_total_states) {
  if (layout_total_states <= 0) {
    throw std::invalid_argument("scan_genes: layout_total_states must be positive");
  }
  std::vector<GeneSpan> genes;
  const std::size_t n = g.size();
  if (n < 2) return genes;

  for (std::size_t i = 0; i < n; ++i) {
    if (g.codons[i] != kStartCodonA || g.wrapped(i + 1) != kStartCodonB) continue;

    GeneSpan span;
    span.start_index = i;
    std::size_t k = i + 2;
    auto next = [&] { return g.wrapped(k++); };
    span.n_in = 1 + next() % 4;
    span.n_out = 1 + next() % 4;
    for (int j = 0; j < span.n_in; ++j) {
      span.input_ids.push_back(next() % layout_total_states);
    }
    for (int j = 0; j < span.n_out; ++j) {
      span.output_ids.push_back(next() % layout_total_states);
    }
    span.table.resize(std::size_t{1} << span.n_in);
    for (auto& row : span.table) row = next();
    genes.push_back(std::move(span));
  }
  return genes;
}

Genome point_mutate(const Genome& g, const MutationConfig& cfg, Rng& rng) {
  Genome out = g;
  for (auto& c : out.codons) {
    if (rng.uniform01() < cfg.point_rate) c = rng.byte();
  }
  return out;
}

Genome insert_segment(const Genome& g, std::size_t src, std::size_t len,
                      std::size_t pos) {
  if (g.size() == 0) throw std::invalid_argument("insert_segment: empty genome");
  if (pos > g.size()) throw std::invalid_argument("insert_segment: pos out of range");
  std::vector<std::uint8_t> seg(len);
  for (std::size_t j = 0; j < len; ++j) seg[j] = g.wrapped(src + j);
  Genome out;
  out.codons.reserve(g.size() + len);
  out.codons.insert(out.codons.end(), g.codons.begin(),
                    g.codons.begin() + static_cast<std::ptrdiff_t>(pos));
  out.codons.insert(out.codons.end(), seg.begin(), seg.end());
  out.codons.insert(out.codons.end(),
                    g.codons.begin() + static_cast<std::ptrdiff_t>(pos),
                    g.codons.end());
  return out;
}

Genome delete_segment(const Genome& g, std::size_t start, std::size_t len) {
  if (len >= g.size()) {
    throw std::invalid_argument("delete_segment: len must be < genome size");
  }
  if (start >= g.size()) {
    throw std::invalid_argument("delete_segment: start out of range");
  }
  Genome out;
  out.codons.reserve(g.size() - len);
  // Keep the arc from just past the deleted run back around to its start.
  for (std::size_t j = 0; j < g.size() - len; ++j) {
    out.codons.push_back(g.wrapped(start + len + j));
  }
  return out;
}

Genome indel_mutate(const Genome& g, const MutationConfig& cfg, Rng& rng) {
  if (cfg.indel_size_min < 0 || cfg.indel_size_max <= cfg.indel_size_min) {
    throw std::invalid_argument("indel_mutate: bad size range");
  }
  Genome out = g;
  const auto span = static_cast<std::uint64_t>(cfg.indel_size_max - cfg.indel_size_min);

  if (rng.uniform01() < cfg.indel_rate) {
    std::size_t len = cfg.indel_size_min + rng.uniform_int(span);
    std::size_t src = rng.uniform_int(out.size());
    std::size_t pos = rng.uniform_int(out.size());
    // Skip (draws already consumed) rather than clamp when the result would
    // leave the genome bounds.
    if (out.size() + len < kMaxGenomeLength) {
      out = insert_segment(out, src, len, pos);
    }
  }
  if (rng.uniform01() < cfg.indel_rate) {
    std::size_t len = cfg.indel_size_min + rng.uniform_int(span);
    std::size_t start = rng.uniform_int(out.size());
    if (out.size() >= len + kMinGenomeLength) {
      out = delete_segment(out, start, len);
    }
  }
  return out;
}

void write_genome_file(const std::filesystem::path& path, const Genome& g,
                       int total_states) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "sasoca-genome v1 total_states=" << total_states << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) f << ' ';
    f << static_cast<int>(g.codons[i]);
  }
  f << "\n";
  if (!f) throw IoError("write failed: " + path.string());
}

std::pair<Genome, int> read_genome_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());

  std::string header;
  if (!std::getline(f, header)) throw DataError(path.string() + ": empty file");
  std::istringstream hs(header);
  std::string magic, version, states_field;
  hs >> magic >> version >> states_field;
  if (magic != "sasoca-genome" || version != "v1" ||
      states_field.rfind("total_states=", 0) != 0) {
    throw DataError(path.string() + ": bad header '" + header + "'");
  }
  int total_states = 0;
  try {
    total_states = std::stoi(states_field.substr(13));
  } catch (const std::exception&) {
    throw DataError(path.string() + ": bad total_states in header");
  }
  if (total_states <= 0) {
    throw DataError(path.string() + ": total_states must be positive");
  }

  Genome g;
  std::string body;
  std::getline(f, body);
  std::istringstream bs(body);
  long long v = 0;
  while (bs >> v) {
    if (v < 0 || v > 255) {
      throw DataError(path.string() + ": codon " + std::to_string(v) +
                      " outside [0, 255]");
    }
    g.codons.push_back(static_cast<std::uint8_t>(v));
  }
  if (!bs.eof()) throw DataError(path.string() + ": non-numeric codon");
  if (g.size() < kMinGenomeLength || g.size() >= kMaxGenomeLength) {
    throw DataError(path.string() + ": genome length " +
                    std::to_string(g.size()) + " outside [" +
                    std::to_string(kMinGenomeLength) + ", " +
                    std::to_string(kMaxGenomeLength) + ")");
  }
  return {std::move(g), total_states};
}

}  // namespace sasoca
