#include "sasoca/fsm.hpp"

#include <stdexcept>
#include <string>

namespace sasoca {

namespace {
constexpr int kMaxLayoutBits = 48;  // keeps pin 63 free as the padding zero
}

StateLayout StateLayout::for_inputs(int n_inputs) {
  StateLayout l{n_inputs};
  if (n_inputs < 1 || l.total() > kMaxLayoutBits) {
    throw std::invalid_argument("StateLayout: n_inputs " +
                                std::to_string(n_inputs) + " unsupported");
  }
  return l;
}

Fsm::Fsm(StateLayout layout, std::vector<LogicGate> gates)
    : layout_(layout), gates_(std::move(gates)) {
  if (layout_.total() > kMaxLayoutBits) {
    throw std::invalid_argument("Fsm: layout exceeds " +
                                std::to_string(kMaxLayoutBits) + " bits");
  }
  for (const LogicGate& g : gates_) {
    if (g.input_ids.empty() || g.output_ids.empty()) {
      throw std::invalid_argument("Fsm: gate with no inputs or outputs");
    }
    if (g.table.size() != (std::size_t{1} << g.input_ids.size())) {
      throw std::invalid_argument("Fsm: table size must be 2^n_in");
    }
    for (int id : g.input_ids) {
      if (id < 0 || id >= layout_.total()) {
        throw std::invalid_argument("Fsm: input id out of range");
      }
      if (id >= layout_.hidden_begin()) reads_hidden_ = true;
    }
    for (int id : g.output_ids) {
      if (id < 0 || id >= layout_.total()) {
        throw std::invalid_argument("Fsm: output id out of range");
      }
    }

    const int n_in = static_cast<int>(g.input_ids.size());
    const int n_out = static_cast<int>(g.output_ids.size());
    auto row_word = [&](std::size_t r) {
      std::uint64_t w = 0;
      for (int j = 0; j < n_out; ++j) {
        w |= static_cast<std::uint64_t>((g.table[r] >> (n_out - 1 - j)) & 1)
             << g.output_ids[j];
      }
      return w;
    };

    if (n_in <= 4) {
      FastGate fg;
      fg.pin.fill(63);
      for (int j = 0; j < n_in; ++j) {
        fg.pin[4 - n_in + j] = static_cast<std::uint8_t>(g.input_ids[j]);
      }
      for (std::size_t r = 0; r < (std::size_t{1} << n_in); ++r) {
        fg.row_mask[r] = row_word(r);
      }
      fast_.push_back(fg);
    } else {
      WideGate wg;
      for (int id : g.input_ids) wg.pins.push_back(static_cast<std::uint8_t>(id));
      for (int id : g.output_ids) wg.out_pos.push_back(static_cast<std::uint8_t>(id));
      wg.table = g.table;
      if (g.table.size() <= 4096) {
        wg.row_mask.resize(g.table.size());
        for (std::size_t r = 0; r < g.table.size(); ++r) wg.row_mask[r] = row_word(r);
      }
      wide_.push_back(std::move(wg));
    }
  }
}

std::uint64_t Fsm::read_mask(const KnockoutMask& mask) const {
  std::uint64_t m = ~std::uint64_t{0};
  if (mask.hold_hidden_zero) {
    for (int b = layout_.hidden_begin(); b < layout_.total(); ++b) {
      m &= ~(std::uint64_t{1} << b);
    }
  }
  if (mask.hold_neighbor_inputs_zero) {
    for (int b = 0; b < layout_.n_inputs; ++b) {
      if (b == mask.self_input_index) continue;
      m &= ~(std::uint64_t{1} << b);
    }
  }
  return m;
}

StepResult Fsm::step(const std::vector<std::uint8_t>& input_bits,
                     const std::vector<std::uint8_t>& hidden_bits,
                     const KnockoutMask& mask) const {
  if (static_cast<int>(input_bits.size()) != layout_.n_inputs) {
    throw std::invalid_argument("Fsm::step: expected " +
                                std::to_string(layout_.n_inputs) + " inputs, got " +
                                std::to_string(input_bits.size()));
  }
  if (hidden_bits.size() != StateLayout::kNumHidden) {
    throw std::invalid_argument("Fsm::step: expected " +
                                std::to_string(StateLayout::kNumHidden) +
                                " hidden bits, got " +
                                std::to_string(hidden_bits.size()));
  }

  // The output slot bit stays 0: it is write-only during stepping.
  std::uint64_t w = 0;
  for (int j = 0; j < layout_.n_inputs; ++j) {
    w |= static_cast<std::uint64_t>(input_bits[j] != 0) << j;
  }
  for (int k = 0; k < StateLayout::kNumHidden; ++k) {
    w |= static_cast<std::uint64_t>(hidden_bits[k] != 0)
         << (layout_.hidden_begin() + k);
  }
  w &= read_mask(mask);

  std::uint64_t next = step_word(w);
  StepResult res;
  res.output = static_cast<std::uint8_t>((next >> layout_.output_index()) & 1);
  for (int k = 0; k < StateLayout::kNumHidden; ++k) {
    res.hidden[k] =
        static_cast<std::uint8_t>((next >> (layout_.hidden_begin() + k)) & 1);
  }
  return res;
}

Fsm compile(const Genome& g, StateLayout layout) {
  std::vector<LogicGate> gates;
  for (GeneSpan& span : scan_genes(g, layout.total())) {
    gates.push_back(LogicGate{std::move(span.input_ids),
                              std::move(span.output_ids),
                              std::move(span.table)});
  }
  return Fsm(layout, std::move(gates));
}

Fsm rule_table_fsm(const std::vector<std::uint8_t>& table, int k,
                   StateLayout layout) {
  if (k < 1 || k > layout.n_inputs) {
    throw std::invalid_argument("rule_table_fsm: k must be in [1, n_inputs]");
  }
  if (table.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("rule_table_fsm: table must have 2^k entries");
  }
  LogicGate gate;
  for (int j = 0; j < k; ++j) gate.input_ids.push_back(j);
  gate.output_ids.push_back(layout.output_index());
  gate.table.reserve(table.size());
  for (std::uint8_t v : table) gate.table.push_back(v & 1);
  return Fsm(layout, {std::move(gate)});
}

}  // namespace sasoca
