#include "masr/cost/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "masr/common/error.hpp"
#include "masr/rnn/forward.hpp"

namespace masr::cost {

std::string_view to_string(BaselineKind k) noexcept { return k == BaselineKind::eie ? "eie" : "ese"; }

std::vector<LayerTrace> trace_network(const rnn::RnnNetwork& net, const rnn::Utterance& utterance) {
  net.validate();
  std::vector<LayerTrace> traces;
  traces.reserve(net.layers.size());
  std::vector<rnn::CompactVector> x = utterance.inputs;
  QuantParams q = utterance.quant;
  for (const auto& layer : net.layers) {
    rnn::LayerResult r = rnn::forward_layer(layer, x, q, net.direction);
    LayerTrace t;
    t.inputs = std::move(x);
    t.forward_states = std::move(r.forward_states);
    t.backward_states = std::move(r.backward_states);
    traces.push_back(std::move(t));
    x = std::move(r.outputs);
    q = rnn::output_quant(layer);
  }
  return traces;
}

namespace {

/// One encoded matrix with its per-row entry totals over all partitions.
struct Encoded {
  sparse::CsrMatrix csr;
  std::vector<std::uint64_t> row_entries;
  std::vector<std::uint64_t> row_padding;
};

Encoded encode(const rnn::CompactMatrix& m, int pes, const sparse::CsrOptions& options) {
  Encoded e{sparse::encode_csr(m, static_cast<std::size_t>(pes), options), {}, {}};
  e.row_entries.assign(m.rows(), 0);
  e.row_padding.assign(m.rows(), 0);
  for (std::size_t p = 0; p < e.csr.num_partitions(); ++p) {
    const auto& part = e.csr.partition(p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::uint32_t k = part.row_offsets[r]; k < part.row_offsets[r + 1]; ++k) {
        ++e.row_entries[r];
        if (part.entries[k].value == 0) ++e.row_padding[r];
      }
    }
  }
  return e;
}

struct PeBits {
  std::uint64_t values = 0, indices = 0, offsets = 0;
};

}  // namespace

BaselineResult cost_csr_baseline(const rnn::RnnNetwork& net, std::span<const LayerTrace> traces, int num_pes,
                                 BaselineKind kind, const UnitCosts& units, int act_window,
                                 const sparse::CsrOptions& options) {
  if (num_pes < 1) throw ParameterError("num_pes must be >= 1");
  if (act_window < 1) throw ParameterError("activation window must be >= 1");
  if (traces.size() != net.layers.size()) throw DimensionError("need one trace per layer");
  const bool bidir = net.direction == rnn::Direction::bidirectional;

  BaselineResult res;
  CsrDesign& d = res.design;
  CsrAccessCounts& n = res.counts;
  d.kind = kind;
  d.pes = num_pes;
  d.value_bits = options.value_bits;
  d.index_bits = options.step_bits;
  d.offset_bits = options.offset_bits;
  const auto P = static_cast<std::uint64_t>(num_pes);

  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    const auto& tr = traces[l];
    const std::size_t T = tr.inputs.size();
    const std::size_t hidden = layer.hidden();
    const std::size_t act_bits = static_cast<std::size_t>(layer.act.bits);

    std::vector<PeBits> pe(num_pes);
    std::uint64_t layer_bits = 0;
    const rnn::CompactMatrix* mats[4] = {&layer.wx, &layer.wh, &layer.vx, &layer.vh};
    const int used = bidir ? 4 : 2;
    std::vector<Encoded> enc;
    for (int m = 0; m < used; ++m) {
      enc.push_back(encode(*mats[m], num_pes, options));
      const auto& csr = enc.back().csr;
      for (std::size_t p = 0; p < csr.num_partitions(); ++p) {
        const auto& part = csr.partition(p);
        pe[p].values += part.entries.size() * static_cast<std::uint64_t>(options.value_bits);
        pe[p].indices += part.entries.size() * static_cast<std::uint64_t>(options.step_bits);
        pe[p].offsets += part.row_offsets.size() * static_cast<std::uint64_t>(part.offset_bits);
      }
      layer_bits += csr.value_bits() + csr.column_index_bits() + csr.row_offset_bits();
    }
    for (const auto& b : pe) {
      d.value_array_bits = std::max(d.value_array_bits, (b.values + 1) / 2);
      d.index_array_bits = std::max(d.index_array_bits, (b.indices + 1) / 2);
      d.offset_array_bits = std::max(d.offset_array_bits, (b.offsets + 1) / 2);
    }
    n.dram_bytes += (layer_bits + 7) / 8;
    d.act_bits = std::max<std::uint64_t>(
        d.act_bits, static_cast<std::uint64_t>(act_window) * (layer.input_dim() + hidden) * act_bits);

    auto matvec = [&](const Encoded& e, const rnn::CompactVector* a, std::size_t rows) {
      ++n.matvecs;
      n.act_read_bits += rows * act_bits;
      for (std::size_t r = 0; r < rows; ++r) {
        const bool live = a != nullptr && a->mask().test(r);
        if (kind == BaselineKind::eie && !live) continue;
        ++n.rows_processed;
        n.row_offset_reads += 2 * P;
        n.regfile_writes += P;
        n.entries += e.row_entries[r];
        n.padding += e.row_padding[r];
      }
    };
    for (int dir = 0; dir < (bidir ? 2 : 1); ++dir) {
      const Encoded& ex = enc[dir == 0 ? 0 : 2];
      const Encoded& eh = enc[dir == 0 ? 1 : 3];
      const auto& states = dir == 0 ? tr.forward_states : tr.backward_states;
      for (std::size_t step = 0; step < T; ++step) {
        const std::size_t t = dir == 0 ? step : T - 1 - step;
        const rnn::CompactVector* prev = nullptr;
        if (dir == 0 && t > 0) prev = &states[t - 1];
        if (dir == 1 && t + 1 < T) prev = &states[t + 1];
        matvec(eh, prev, layer.hidden());
        matvec(ex, &tr.inputs[t], layer.input_dim());
        n.vvadd_ops += hidden;
        n.act_write_bits += hidden * act_bits;
      }
    }
  }
  const double entries_scaled = static_cast<double>(n.entries) / (static_cast<double>(P) * units.csr_utilization);
  n.cycles = static_cast<std::uint64_t>(std::ceil(entries_scaled));
  d.register_bits = P * static_cast<std::uint64_t>(units.csr_pipeline_register_bits);

  DesignCost& c = res.cost;
  c.name = std::string(to_string(kind)) + "-p" + std::to_string(num_pes);
  c.cycles = n.cycles;
  const double cycles = static_cast<double>(n.cycles);
  const double leak = units.leakage_per_bit_per_cycle * cycles;
  const double arrays = static_cast<double>(num_pes) * d.arrays_per_pe;
  const double vb = static_cast<double>(d.value_array_bits);
  const double ib = static_cast<double>(d.index_array_bits);
  const double ob = static_cast<double>(d.offset_array_bits);
  const double ab = static_cast<double>(d.act_bits);

  c.area_of(Category::weight_sram) = arrays * sram_array_area(d.value_array_bits, units);
  c.area_of(Category::mask_sram) = arrays * sram_array_area(d.index_array_bits, units);
  c.area_of(Category::row_offset_sram) = arrays * sram_array_area(d.offset_array_bits, units);
  c.area_of(Category::act_sram) = sram_array_area(d.act_bits, units);
  c.area_of(Category::registers) = static_cast<double>(d.register_bits) * units.register_bit_area;
  c.area_of(Category::logic) = static_cast<double>(num_pes) * (units.logic_area_per_lane + units.logic_area_per_pe);

  const double entries = static_cast<double>(n.entries);
  c.energy_of(Category::weight_sram) =
      entries * d.value_bits * units.sram_read_energy.at(vb) + arrays * vb * leak;
  c.energy_of(Category::mask_sram) = entries * d.index_bits * units.sram_read_energy.at(ib) + arrays * ib * leak;
  c.energy_of(Category::row_offset_sram) =
      static_cast<double>(n.row_offset_reads) * d.offset_bits * units.sram_read_energy.at(ob) + arrays * ob * leak;
  c.energy_of(Category::act_sram) =
      static_cast<double>(n.act_read_bits + n.act_write_bits) * units.sram_read_energy.at(ab) + ab * leak;
  c.energy_of(Category::registers) =
      static_cast<double>(d.register_bits) * cycles * units.register_energy_per_bit_cycle +
      static_cast<double>(n.regfile_writes) * units.regfile_access_energy;
  // padding entries still occupy a MAC slot
  c.energy_of(Category::logic) = entries * units.mac_energy + static_cast<double>(n.vvadd_ops) * units.vvadd_op_energy;
  c.energy_of(Category::dram) = static_cast<double>(n.dram_bytes) * units.dram_energy_per_byte;
  return res;
}

}  // namespace masr::cost
