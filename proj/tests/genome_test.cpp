#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "sasoca/genome.hpp"
#include "sasoca/rng.hpp"

using namespace sasoca;

namespace {

Genome from_codons(std::vector<std::uint8_t> codons) {
  Genome g;
  g.codons = std::move(codons);
  return g;
}

void check_matches_oracle(const Genome& g, int total_states) {
  const auto mine = scan_genes(g, total_states);
  const auto ref = oracle::scan(g.codons, total_states);
  REQUIRE(mine.size() == ref.size());
  for (std::size_t i = 0; i < mine.size(); ++i) {
    CHECK(mine[i].start_index == ref[i].start);
    CHECK(mine[i].n_in == ref[i].n_in);
    CHECK(mine[i].n_out == ref[i].n_out);
    CHECK(mine[i].input_ids == ref[i].ins);
    CHECK(mine[i].output_ids == ref[i].outs);
    CHECK(mine[i].table == ref[i].table);
  }
}

}  // namespace

TEST_CASE("scan_genes decodes the documented layout") {
  // [42, 213, fanin=1, fanout=0, in ids 0 1, out id 5, table 1 0 1 1]:
  // fanin codon 1 -> 2 inputs, fanout codon 0 -> 1 output.
  Genome g = from_codons({42, 213, 1, 0, 0, 1, 5, 1, 0, 1, 1,
                          7, 7, 7, 7, 7, 7, 7, 7, 7});
  const auto genes = scan_genes(g, 22);
  REQUIRE(genes.size() == 1);
  CHECK(genes[0].start_index == 0);
  CHECK(genes[0].n_in == 2);
  CHECK(genes[0].n_out == 1);
  CHECK(genes[0].input_ids == std::vector<int>{0, 1});
  CHECK(genes[0].output_ids == std::vector<int>{5});
  CHECK(genes[0].table == std::vector<std::uint8_t>{1, 0, 1, 1});
  check_matches_oracle(g, 22);
}

TEST_CASE("scan_genes reduces wiring ids modulo the state count") {
  // id codons 25 and 47 with 22 state variables -> 3 and 3 (25%22, 47%22=3).
  Genome g = from_codons({42, 213, 0, 0, 25, 47, 9, 9, 1, 1, 1, 1});
  const auto genes = scan_genes(g, 22);
  REQUIRE(genes.size() == 1);
  CHECK(genes[0].n_in == 1);
  CHECK(genes[0].input_ids == std::vector<int>{3});
  CHECK(genes[0].output_ids == std::vector<int>{3});  // 47 % 22
  check_matches_oracle(g, 22);
}

TEST_CASE("gene bodies wrap circularly past the end") {
  // Start codon at the last two positions; the body is read from index 0.
  std::vector<std::uint8_t> codons(24, 7);
  codons[22] = 42;
  codons[23] = 213;
  codons[0] = 1;    // fanin -> n_in = 2
  codons[1] = 0;    // fanout -> n_out = 1
  codons[2] = 3;    // in ids
  codons[3] = 4;
  codons[4] = 9;    // out id
  codons[5] = 250;  // table rows
  codons[6] = 13;
  codons[7] = 21;
  codons[8] = 2;
  Genome g = from_codons(codons);
  const auto genes = scan_genes(g, 22);
  REQUIRE(genes.size() == 1);
  CHECK(genes[0].start_index == 22);
  CHECK(genes[0].input_ids == std::vector<int>{3, 4});
  CHECK(genes[0].output_ids == std::vector<int>{9});
  CHECK(genes[0].table == std::vector<std::uint8_t>{250, 13, 21, 2});
  check_matches_oracle(g, 22);
}

TEST_CASE("the start codon pair itself may straddle the end") {
  std::vector<std::uint8_t> codons(16, 5);
  codons[15] = 42;
  codons[0] = 213;
  codons[1] = 0;  // fanin -> 1 input
  codons[2] = 0;  // fanout -> 1 output
  codons[3] = 6;
  codons[4] = 8;
  codons[5] = 1;
  codons[6] = 0;
  Genome g = from_codons(codons);
  const auto genes = scan_genes(g, 20);
  REQUIRE(genes.size() == 1);
  CHECK(genes[0].start_index == 15);
  CHECK(genes[0].input_ids == std::vector<int>{6});
  CHECK(genes[0].output_ids == std::vector<int>{8});
  CHECK(genes[0].table == std::vector<std::uint8_t>{1, 0});
  check_matches_oracle(g, 20);
}

TEST_CASE("overlapping genes decode independently") {
  // Gene at 0 whose table region contains a second start codon.
  Genome g = from_codons({42, 213, 0, 0, 5, 6, 42, 213, 0, 0, 1, 2, 9, 9, 9, 9});
  const auto genes = scan_genes(g, 22);
  REQUIRE(genes.size() == 2);
  CHECK(genes[0].start_index == 0);
  CHECK(genes[0].table == std::vector<std::uint8_t>{42, 213});
  CHECK(genes[1].start_index == 6);
  CHECK(genes[1].input_ids == std::vector<int>{1});
  CHECK(genes[1].output_ids == std::vector<int>{2});
  check_matches_oracle(g, 22);
}

TEST_CASE("genomes without start codons have no genes") {
  Genome g = from_codons(std::vector<std::uint8_t>(100, 42));  // 42 without 213
  CHECK(scan_genes(g, 22).empty());
  check_matches_oracle(g, 22);
}

TEST_CASE("random genomes decode identically to the independent decoder") {
  Rng rng(20260816);
  const int state_counts[] = {20, 22, 42, 44};
  for (int trial = 0; trial < 300; ++trial) {
    const int ts = state_counts[trial % 4];
    const std::size_t len = 1000 + rng.uniform_int(3000);
    Rng genome_rng(derive_seed(99, static_cast<std::uint64_t>(trial)));
    Genome g = random_genome(len, 16, ts, genome_rng);
    check_matches_oracle(g, ts);
  }
}

TEST_CASE("random_genome respects its contract") {
  Rng rng(7);
  Genome g = random_genome(10000, 16, 22, rng);
  CHECK(g.size() == 10000);
  // The 16 stamped genes never overlap, so at least 16 genes decode; the
  // random background may contribute extra start codons.
  CHECK(scan_genes(g, 22).size() >= 16);

  Rng a(3), b(3), c(4);
  Genome ga = random_genome(2000, 16, 22, a);
  Genome gb = random_genome(2000, 16, 22, b);
  Genome gc = random_genome(2000, 16, 22, c);
  CHECK(ga.codons == gb.codons);
  CHECK(ga.codons != gc.codons);

  CHECK_THROWS_AS(random_genome(999, 16, 22, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_genome(40000, 16, 22, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_genome(1000, -1, 22, rng), std::invalid_argument);
}

TEST_CASE("point mutation substitutes at the configured rate") {
  Rng init(11);
  Genome g = random_genome(10000, 0, 22, init);

  MutationConfig off;
  off.point_rate = 0.0;
  Rng r0(5);
  CHECK(point_mutate(g, off, r0).codons == g.codons);

  MutationConfig cfg;  // defaults: point rate 0.01
  Rng r1(5), r2(5);
  Genome m1 = point_mutate(g, cfg, r1);
  Genome m2 = point_mutate(g, cfg, r2);
  CHECK(m1.codons == m2.codons);  // same seed, same result
  int changed = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (m1.codons[i] != g.codons[i]) ++changed;
  }
  // Expected 10000 * 0.01 * 255/256 = 99.6 changes, sigma ~ 10.
  CHECK(changed > 55);
  CHECK(changed < 145);
}

TEST_CASE("insert_segment splices a circular copy") {
  Genome g = from_codons({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  Genome front = insert_segment(g, 2, 3, 0);
  CHECK(front.codons ==
        std::vector<std::uint8_t>{2, 3, 4, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  Genome back = insert_segment(g, 2, 3, 10);
  CHECK(back.codons ==
        std::vector<std::uint8_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 2, 3, 4});

  // Source segment wraps: codons 8, 9, 0, 1 inserted before position 5.
  Genome wrap = insert_segment(g, 8, 4, 5);
  CHECK(wrap.codons ==
        std::vector<std::uint8_t>{0, 1, 2, 3, 4, 8, 9, 0, 1, 5, 6, 7, 8, 9});

  CHECK_THROWS_AS(insert_segment(g, 0, 1, 11), std::invalid_argument);
}

TEST_CASE("delete_segment keeps the remaining arc") {
  Genome g = from_codons({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  // Deleting [3, 7) leaves the arc starting just past the run.
  Genome mid = delete_segment(g, 3, 4);
  CHECK(mid.codons == std::vector<std::uint8_t>{7, 8, 9, 0, 1, 2});

  // Deleting a run that wraps past the end removes 8, 9, 0, 1.
  Genome wrap = delete_segment(g, 8, 4);
  CHECK(wrap.codons == std::vector<std::uint8_t>{2, 3, 4, 5, 6, 7});

  CHECK_THROWS_AS(delete_segment(g, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(delete_segment(g, 10, 1), std::invalid_argument);
}

TEST_CASE("indel_mutate consumes draws even when an event is skipped") {
  // Replays the documented algorithm draw by draw: coin, then length, source
  // and position for the insertion; coin, then length and start for the
  // deletion. Skipped events must leave the stream aligned.
  Rng init(13);
  Genome g = random_genome(39900, 0, 22, init);  // insertions of >= 100 skip

  MutationConfig cfg;
  cfg.indel_rate = 1.0;  // both events always fire
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng lib(seed), ref(seed);
    Genome got = indel_mutate(g, cfg, lib);

    Genome expect = g;
    const auto span =
        static_cast<std::uint64_t>(cfg.indel_size_max - cfg.indel_size_min);
    REQUIRE(ref.uniform01() < cfg.indel_rate);
    {
      std::size_t len = cfg.indel_size_min + ref.uniform_int(span);
      std::size_t src = ref.uniform_int(expect.size());
      std::size_t pos = ref.uniform_int(expect.size());
      if (expect.size() + len < kMaxGenomeLength) {
        expect = insert_segment(expect, src, len, pos);
      }
    }
    REQUIRE(ref.uniform01() < cfg.indel_rate);
    {
      std::size_t len = cfg.indel_size_min + ref.uniform_int(span);
      std::size_t start = ref.uniform_int(expect.size());
      if (expect.size() >= len + kMinGenomeLength) {
        expect = delete_segment(expect, start, len);
      }
    }
    CHECK(got.codons == expect.codons);
  }
}

TEST_CASE("indel_mutate never leaves the genome length bounds") {
  MutationConfig cfg;
  cfg.indel_rate = 1.0;
  Rng rng(17);
  const std::size_t lengths[] = {1000, 1008, 2000, 39900, 39983};
  for (std::size_t len : lengths) {
    Rng init(derive_seed(21, len));
    Genome g = random_genome(len, 0, 22, init);
    for (int i = 0; i < 40; ++i) {
      Genome m = indel_mutate(g, cfg, rng);
      CHECK(m.size() >= kMinGenomeLength);
      CHECK(m.size() < kMaxGenomeLength);
      g = std::move(m);
    }
  }

  MutationConfig off;
  off.indel_rate = 0.0;
  Rng init(29), quiet(30);
  Genome g = random_genome(1500, 4, 22, init);
  CHECK(indel_mutate(g, off, quiet).codons == g.codons);
}
