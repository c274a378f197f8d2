#include "masr/cost/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "masr/common/error.hpp"

namespace masr::cost {

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::weight_sram: return "weight_sram";
    case Category::mask_sram: return "mask_sram";
    case Category::act_sram: return "act_sram";
    case Category::row_offset_sram: return "row_offset_sram";
    case Category::registers: return "registers";
    case Category::logic: return "logic";
    case Category::dram: return "dram";
  }
  return "?";
}

double DesignCost::total_area() const noexcept {
  double s = 0.0;
  for (double a : area) s += a;
  return s;
}

double DesignCost::total_energy() const noexcept {
  double s = 0.0;
  for (double e : energy) s += e;
  return s;
}

double DesignCost::power() const noexcept {
  return cycles == 0 ? 0.0 : total_energy() / static_cast<double>(cycles);
}

double DesignCost::metadata_and_act_area() const noexcept {
  return area_of(Category::mask_sram) + area_of(Category::row_offset_sram) + area_of(Category::act_sram);
}

std::uint64_t MasrDesign::sram_bits() const noexcept {
  const auto l = static_cast<std::uint64_t>(lanes) * static_cast<std::uint64_t>(arrays_per_lane);
  return l * (weight_array_bits + mask_array_bits) + static_cast<std::uint64_t>(banks) * act_bank_bits;
}

double sram_array_area(std::uint64_t bits, const UnitCosts& units) {
  if (bits == 0) return 0.0;
  const auto b = static_cast<double>(bits);
  return b * units.sram_area.at(b);
}

std::uint64_t compact_activation_bits(const rnn::RnnNetwork& net, std::span<const double> input_nz,
                                      std::span<const double> output_nz, int window) {
  if (input_nz.size() != net.layers.size() || output_nz.size() != net.layers.size()) {
    throw DimensionError("need one input and one output density per layer");
  }
  std::uint64_t worst = 0;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    const double bits = layer.act.bits;
    // mask bit per element plus values at the observed density
    const double per_step = static_cast<double>(layer.input_dim()) * (1.0 + input_nz[l] * bits) +
                            static_cast<double>(layer.hidden()) * (1.0 + output_nz[l] * bits);
    worst = std::max(worst, static_cast<std::uint64_t>(std::ceil(per_step * window)));
  }
  return worst;
}

MasrDesign describe_masr(const sim::AcceleratorConfig& cfg, const sim::LaneAssignment& assignment,
                         std::uint64_t act_storage_bits, const UnitCosts& units) {
  const sim::DerivedConfig d = sim::validate_config(cfg);
  MasrDesign m;
  m.lanes = d.lanes;
  m.pes = d.pes;
  m.banks = cfg.act_banks;
  const std::uint64_t wbits = std::max<std::uint64_t>(assignment.max_lane.weight_bytes(),
                                                      cfg.capacities.weight_bytes_per_lane) * 8;
  const std::uint64_t mbits = std::max<std::uint64_t>(assignment.max_lane.mask_bytes(),
                                                      cfg.capacities.mask_bytes_per_lane) * 8;
  // one layer's two passes, split across the double buffer
  m.weight_array_bits = (wbits + 1) / 2;
  m.mask_array_bits = (mbits + 1) / 2;
  const std::uint64_t act = std::max<std::uint64_t>(act_storage_bits, cfg.capacities.act_bytes * 8);
  m.act_bank_bits = (act + static_cast<std::uint64_t>(cfg.act_banks) - 1) / static_cast<std::uint64_t>(cfg.act_banks);

  const auto lanes = static_cast<std::uint64_t>(d.lanes);
  const auto pes = static_cast<std::uint64_t>(d.pes);
  // weight and activation mask windows, double buffered
  m.mask_register_bits = lanes * 4 * static_cast<std::uint64_t>(units.mask_register_bits);
  m.other_register_bits =
      lanes * (static_cast<std::uint64_t>(cfg.queue_depth) * static_cast<std::uint64_t>(units.queue_entry_bits) +
               static_cast<std::uint64_t>(units.pipeline_register_bits)) +
      pes * static_cast<std::uint64_t>(d.regfile_words) * static_cast<std::uint64_t>(cfg.act_word_bits);
  return m;
}

DesignCost cost_masr(const sim::SimStats& stats, const MasrDesign& design, const UnitCosts& units, std::string name) {
  DesignCost c;
  c.name = std::move(name);
  c.cycles = stats.total_cycles;
  const double cycles = static_cast<double>(stats.total_cycles);
  const double leak = units.leakage_per_bit_per_cycle * cycles;
  const double arrays = static_cast<double>(design.lanes) * design.arrays_per_lane;

  const double w_bits = static_cast<double>(design.weight_array_bits);
  const double m_bits = static_cast<double>(design.mask_array_bits);
  const double a_bits = static_cast<double>(design.act_bank_bits);

  c.area_of(Category::weight_sram) = arrays * sram_array_area(design.weight_array_bits, units);
  c.area_of(Category::mask_sram) = arrays * sram_array_area(design.mask_array_bits, units);
  c.area_of(Category::act_sram) = design.banks * sram_array_area(design.act_bank_bits, units);
  c.area_of(Category::registers) = static_cast<double>(design.register_bits()) * units.register_bit_area;
  c.area_of(Category::logic) = design.lanes * units.logic_area_per_lane + design.pes * units.logic_area_per_pe;

  const auto& r = stats.sram_reads;
  c.energy_of(Category::weight_sram) =
      static_cast<double>(r.weight) * units.sram_read_energy.at(w_bits) + arrays * w_bits * leak;
  c.energy_of(Category::mask_sram) =
      static_cast<double>(r.weight_mask) * units.sram_read_energy.at(m_bits) + arrays * m_bits * leak;
  c.energy_of(Category::act_sram) =
      static_cast<double>(r.act + r.act_mask + stats.act_write_bits) * units.sram_read_energy.at(a_bits) +
      design.banks * a_bits * leak;
  c.energy_of(Category::registers) =
      static_cast<double>(design.register_bits()) * cycles * units.register_energy_per_bit_cycle +
      static_cast<double>(stats.regfile_reads + stats.regfile_writes) * units.regfile_access_energy;
  c.energy_of(Category::logic) = static_cast<double>(stats.mac_count) * units.mac_energy +
                                 static_cast<double>(stats.queue_pushes + stats.queue_pops) * units.queue_op_energy +
                                 static_cast<double>(stats.vvadd_ops) * units.vvadd_op_energy;
  c.energy_of(Category::dram) = static_cast<double>(stats.dram_bytes) * units.dram_energy_per_byte;
  return c;
}

namespace {

std::optional<double> ratio(double x, double ref) {
  if (ref == 0.0) return std::nullopt;
  return x / ref;
}

}  // namespace

std::vector<ComparisonRow> compare(std::span<const DesignCost> designs, std::size_t normalize_to) {
  if (designs.empty()) throw ParameterError("nothing to compare");
  if (normalize_to >= designs.size()) throw ParameterError("normalisation index out of range");
  const DesignCost& ref = designs[normalize_to];
  if (ref.total_area() == 0.0 || ref.total_energy() == 0.0) {
    throw ParameterError("reference design '" + ref.name + "' has zero total area or energy");
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(designs.size() * (kCategoryCount + 1));
  for (const auto& d : designs) {
    for (Category c : kCategories) {
      rows.push_back({d.name, std::string(to_string(c)), ratio(d.area_of(c), ref.area_of(c)),
                      ratio(d.energy_of(c), ref.energy_of(c))});
    }
    rows.push_back({d.name, "total", ratio(d.total_area(), ref.total_area()),
                    ratio(d.total_energy(), ref.total_energy())});
  }
  return rows;
}

}  // namespace masr::cost
