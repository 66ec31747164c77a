#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sasoca/genome.hpp"

namespace sasoca {

// State-variable layout of one cell's update machine. Indices are laid out
// [0, n_inputs) neighborhood inputs, then the single output slot, then 16
// hidden registers. The whole vector fits a 64-bit word (3D Moore radius 1:
// 27 + 1 + 16 = 44 bits), which is what the step kernel operates on.
struct StateLayout {
  int n_inputs = 0;

  static constexpr int kNumHidden = 16;

  int total() const { return n_inputs + 1 + kNumHidden; }
  int output_index() const { return n_inputs; }
  int hidden_begin() const { return n_inputs + 1; }

  static StateLayout for_inputs(int n_inputs);
};

// One logic gate: reads input_ids (first-listed is the most significant bit
// of the table row index), writes output_ids (most significant table bit
// goes to the first-listed output).
struct LogicGate {
  std::vector<int> input_ids;
  std::vector<int> output_ids;
  std::vector<std::uint8_t> table;  // 2^n_in rows, raw codon values
};

// Read-time masks used by the analyses. hold_hidden_zero: every hidden read
// sees 0 (writes still happen, they are just never visible).
// hold_neighbor_inputs_zero: all neighborhood inputs read 0 except the self
// slot. self_input_index < 0 means "fill in from the lattice" in run_ic, or
// "no self slot" for a bare Fsm::step.
struct KnockoutMask {
  bool hold_hidden_zero = false;
  bool hold_neighbor_inputs_zero = false;
  int self_input_index = -1;
};

struct StepResult {
  std::uint8_t output = 0;
  std::array<std::uint8_t, StateLayout::kNumHidden> hidden{};
};

// A compiled synchronous gate network. All gates read the time-t state word
// and OR their outputs into a fresh zeroed t+1 word, so gate order never
// matters and multiple writers to one variable combine by OR. The output
// slot is write-only during normal stepping: callers build the input word
// with that bit clear (rule-density enumeration is the one place that sets
// it, to measure the marginal over the full read vector).
class Fsm {
 public:
  Fsm(StateLayout layout, std::vector<LogicGate> gates);

  const StateLayout& layout() const { return layout_; }
  const std::vector<LogicGate>& gates() const { return gates_; }
  bool reads_hidden() const { return reads_hidden_; }

  // AND-mask implementing a KnockoutMask at read time.
  std::uint64_t read_mask(const KnockoutMask& mask) const;

  // Core kernel: next state word from the (already masked) current word.
  std::uint64_t step_word(std::uint64_t state) const {
    std::uint64_t next = 0;
    for (const FastGate& g : fast_) {
      unsigned r = static_cast<unsigned>(((state >> g.pin[0]) & 1) << 3 |
                                         ((state >> g.pin[1]) & 1) << 2 |
                                         ((state >> g.pin[2]) & 1) << 1 |
                                         ((state >> g.pin[3]) & 1));
      next |= g.row_mask[r];
    }
    for (const WideGate& g : wide_) next |= g.eval(state);
    return next;
  }

  // One update of a single cell's machine: input_bits.size() must equal
  // n_inputs and hidden_bits.size() must equal 16 (std::invalid_argument
  // otherwise). Values are taken bit-wise (nonzero = 1).
  StepResult step(const std::vector<std::uint8_t>& input_bits,
                  const std::vector<std::uint8_t>& hidden_bits,
                  const KnockoutMask& mask = {}) const;

 private:
  // Fan-in <= 4 gates (every genome-decoded gate). Inputs are padded at the
  // most significant side with pin 63, which is guaranteed zero because
  // layouts never exceed 48 bits, so the padded row index equals the real
  // one. row_mask[r] is the t+1 word contribution for input pattern r.
  struct FastGate {
    std::array<std::uint8_t, 4> pin{};
    std::array<std::uint64_t, 16> row_mask{};
  };

  // Wider gates (rule tables). Row masks are materialized only for small
  // tables; otherwise output bits are decoded per step.
  struct WideGate {
    std::vector<std::uint8_t> pins;
    std::vector<std::uint64_t> row_mask;  // empty when decoding on the fly
    std::vector<std::uint8_t> table;
    std::vector<std::uint8_t> out_pos;

    std::uint64_t eval(std::uint64_t state) const {
      std::size_t r = 0;
      for (std::uint8_t p : pins) r = (r << 1) | ((state >> p) & 1);
      if (!row_mask.empty()) return row_mask[r];
      std::uint64_t w = 0;
      std::uint8_t v = table[r];
      int n_out = static_cast<int>(out_pos.size());
      for (int j = 0; j < n_out; ++j) {
        w |= static_cast<std::uint64_t>((v >> (n_out - 1 - j)) & 1) << out_pos[j];
      }
      return w;
    }
  };

  StateLayout layout_;
  std::vector<LogicGate> gates_;
  std::vector<FastGate> fast_;
  std::vector<WideGate> wide_;
  bool reads_hidden_ = false;
};

// Decode a genome into its gate network under the given layout.
Fsm compile(const Genome& g, StateLayout layout);

// Classic k-neighbor rule table as an Fsm: one gate reading input slots
// [0, k) (first slot = most significant index bit) and writing the output
// slot. table must have 2^k entries, each 0 or 1; requires k <= n_inputs.
Fsm rule_table_fsm(const std::vector<std::uint8_t>& table, int k,
                   StateLayout layout);

}  // namespace sasoca
