#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "masr/cost/unit_costs.hpp"
#include "masr/rnn/types.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/partition.hpp"
#include "masr/sim/stats.hpp"

namespace masr::cost {

enum class Category { weight_sram, mask_sram, act_sram, row_offset_sram, registers, logic, dram };
inline constexpr std::size_t kCategoryCount = 7;
inline constexpr std::array<Category, kCategoryCount> kCategories = {
    Category::weight_sram, Category::mask_sram, Category::act_sram, Category::row_offset_sram,
    Category::registers,   Category::logic,     Category::dram};

[[nodiscard]] std::string_view to_string(Category c) noexcept;

struct DesignCost {
  std::string name;
  std::array<double, kCategoryCount> area{};  // dram area stays 0
  std::array<double, kCategoryCount> energy{};
  std::uint64_t cycles = 0;

  [[nodiscard]] double& area_of(Category c) noexcept { return area[static_cast<std::size_t>(c)]; }
  [[nodiscard]] double& energy_of(Category c) noexcept { return energy[static_cast<std::size_t>(c)]; }
  [[nodiscard]] double area_of(Category c) const noexcept { return area[static_cast<std::size_t>(c)]; }
  [[nodiscard]] double energy_of(Category c) const noexcept { return energy[static_cast<std::size_t>(c)]; }
  [[nodiscard]] double total_area() const noexcept;
  [[nodiscard]] double total_energy() const noexcept;
  /// Everything but DRAM traffic.
  [[nodiscard]] double onchip_energy() const noexcept { return total_energy() - energy_of(Category::dram); }
  /// Energy per cycle; 0 for a run without cycles.
  [[nodiscard]] double power() const noexcept;
  /// Sparsity metadata plus activation storage (mask, row offsets and activations).
  [[nodiscard]] double metadata_and_act_area() const noexcept;
};

/// Physical inventory of one MASR configuration.
struct MasrDesign {
  int lanes = 0;
  int pes = 0;
  int banks = 1;
  int arrays_per_lane = 2;  // current and next pass, double buffered
  std::uint64_t weight_array_bits = 0;  // one array
  std::uint64_t mask_array_bits = 0;
  std::uint64_t act_bank_bits = 0;      // one activation bank
  std::uint64_t mask_register_bits = 0;  // whole design
  std::uint64_t other_register_bits = 0;

  [[nodiscard]] std::uint64_t sram_bits() const noexcept;
  [[nodiscard]] std::uint64_t register_bits() const noexcept { return mask_register_bits + other_register_bits; }
};

/// Activation storage for `window` timesteps of every layer's inputs and outputs, compact
/// at the given mean densities (one value per layer input and one per layer output).
[[nodiscard]] std::uint64_t compact_activation_bits(const rnn::RnnNetwork& net, std::span<const double> input_nz,
                                                    std::span<const double> output_nz, int window);

/// Sizes arrays from the lane footprints (or the configured capacities when larger).
[[nodiscard]] MasrDesign describe_masr(const sim::AcceleratorConfig& cfg, const sim::LaneAssignment& assignment,
                                       std::uint64_t act_storage_bits, const UnitCosts& units);

/// Area from the inventory; energy as access counts times unit costs plus leakage and
/// register clocking over the run.
[[nodiscard]] DesignCost cost_masr(const sim::SimStats& stats, const MasrDesign& design, const UnitCosts& units,
                                   std::string name = "masr");

/// Bits times per-bit area of one array of that size.
[[nodiscard]] double sram_array_area(std::uint64_t bits, const UnitCosts& units);

struct ComparisonRow {
  std::string design;
  std::string category;  // a Category name or "total"
  std::optional<double> area_ratio;    // absent when the reference has none of that category
  std::optional<double> energy_ratio;
};

/// Long-format ratios of every design against designs[normalize_to]. ParameterError when
/// the list is empty, the index is out of range, or the reference totals are zero.
[[nodiscard]] std::vector<ComparisonRow> compare(std::span<const DesignCost> designs, std::size_t normalize_to);

}  // namespace masr::cost
