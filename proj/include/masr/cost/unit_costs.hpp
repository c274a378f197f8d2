#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace masr::cost {

/// Piecewise-linear in log2(size). Flat below the first knot, extended along the last
/// segment above the last knot.
class Curve {
 public:
  Curve() = default;
  /// Knots as (size_bits, value), sizes strictly ascending and positive. ParameterError otherwise.
  explicit Curve(std::vector<std::pair<double, double>> knots);

  [[nodiscard]] double at(double size_bits) const;
  [[nodiscard]] const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Abstract, non-physical unit costs. Only ratios between designs are meaningful.
struct UnitCosts {
  Curve sram_read_energy;  // per bit read, by array size; plateaus for small arrays
  Curve sram_area;         // per bit, by array size; small arrays pay for periphery
  double leakage_per_bit_per_cycle = 0.0;
  double regfile_access_energy = 0.0;  // per activation read or written
  double register_bit_area = 0.0;
  double register_energy_per_bit_cycle = 0.0;
  double mac_energy = 0.0;
  double queue_op_energy = 0.0;
  double vvadd_op_energy = 0.0;
  double logic_area_per_lane = 0.0;
  double logic_area_per_pe = 0.0;
  double dram_energy_per_byte = 0.0;

  // register inventory
  int mask_register_bits = 512;  // one mask window; lanes keep weight and activation windows, double buffered
  int queue_entry_bits = 128;    // four 32-bit sign-split partial sums
  int pipeline_register_bits = 64;
  int csr_pipeline_register_bits = 128;  // per PE of the CSR baseline

  /// MAC utilisation assumed for the CSR baselines, which are not simulated cycle by cycle.
  double csr_utilization = 0.5;

  [[nodiscard]] static UnitCosts defaults();
  /// Throws ParameterError on negative costs or curves that violate the size trends.
  void validate() const;
};

/// Applies the keys present in `j` on top of `base`.
[[nodiscard]] UnitCosts unit_costs_from_json(const nlohmann::json& j, UnitCosts base = UnitCosts::defaults());
[[nodiscard]] nlohmann::json to_json(const UnitCosts& u);
[[nodiscard]] UnitCosts load_unit_costs(const std::filesystem::path& path);

}  // namespace masr::cost
