#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "masr/cost/cost_model.hpp"
#include "masr/cost/unit_costs.hpp"
#include "masr/rnn/types.hpp"
#include "masr/sparse/csr.hpp"

namespace masr::cost {

/// eie skips rows whose activation is zero; ese walks every row.
enum class BaselineKind { eie, ese };

[[nodiscard]] std::string_view to_string(BaselineKind k) noexcept;

/// Activations every matrix of one layer consumes, from the golden model.
struct LayerTrace {
  std::vector<rnn::CompactVector> inputs;
  std::vector<rnn::CompactVector> forward_states;
  std::vector<rnn::CompactVector> backward_states;  // empty when unidirectional
};

[[nodiscard]] std::vector<LayerTrace> trace_network(const rnn::RnnNetwork& net, const rnn::Utterance& utterance);

struct CsrAccessCounts {
  std::uint64_t matvecs = 0;
  std::uint64_t rows_processed = 0;
  std::uint64_t row_offset_reads = 0;  // two per processed row per PE
  std::uint64_t entries = 0;           // stored entries walked, padding included
  std::uint64_t padding = 0;
  std::uint64_t act_read_bits = 0;
  std::uint64_t act_write_bits = 0;
  std::uint64_t regfile_writes = 0;  // activation broadcast into each PE
  std::uint64_t vvadd_ops = 0;
  std::uint64_t dram_bytes = 0;
  std::uint64_t cycles = 0;
};

/// Per-PE arrays, sized for the largest layer and split in two for double buffering.
struct CsrDesign {
  BaselineKind kind = BaselineKind::eie;
  int pes = 1;
  int arrays_per_pe = 2;
  std::uint64_t value_array_bits = 0;
  std::uint64_t index_array_bits = 0;
  std::uint64_t offset_array_bits = 0;
  std::uint64_t act_bits = 0;  // dense activation buffer, shared
  std::uint64_t register_bits = 0;
  int value_bits = 10;
  int index_bits = 4;
  int offset_bits = 16;
};

struct BaselineResult {
  CsrDesign design;
  CsrAccessCounts counts;
  DesignCost cost;
};

/// Pointer-based accelerator run over the same traces. Column indices are priced in the
/// mask_sram category so both designs' per-nonzero metadata lands in one bucket.
[[nodiscard]] BaselineResult cost_csr_baseline(const rnn::RnnNetwork& net, std::span<const LayerTrace> traces,
                                               int num_pes, BaselineKind kind, const UnitCosts& units,
                                               int act_window, const sparse::CsrOptions& options = {});

}  // namespace masr::cost
