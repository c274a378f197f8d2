#include "masr/cost/unit_costs.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "masr/common/error.hpp"

namespace masr::cost {

Curve::Curve(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw ParameterError("curve needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].first > 0.0)) throw ParameterError("curve sizes must be positive");
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) throw ParameterError("curve sizes must ascend");
  }
}

double Curve::at(double size_bits) const {
  if (knots_.empty()) return 0.0;
  if (knots_.size() == 1 || size_bits <= knots_.front().first) return knots_.front().second;
  const double x = std::log2(size_bits);
  std::size_t i = 1;
  while (i + 1 < knots_.size() && size_bits > knots_[i].first) ++i;
  const double x0 = std::log2(knots_[i - 1].first);
  const double x1 = std::log2(knots_[i].first);
  const double y0 = knots_[i - 1].second;
  const double y1 = knots_[i].second;
  return std::max(0.0, y0 + (y1 - y0) * (x - x0) / (x1 - x0));
}

UnitCosts UnitCosts::defaults() {
  UnitCosts u;
  constexpr double K = 1024.0;
  // read energy per bit: flat up to 32 Kbit, then rising with array size
  u.sram_read_energy = Curve({{1 * K, 0.10}, {32 * K, 0.10}, {128 * K, 0.20}, {512 * K, 0.40}, {2048 * K, 0.80},
                              {8192 * K, 1.60}});
  // area per bit: small arrays are dominated by periphery
  u.sram_area = Curve({{1 * K, 4.0}, {8 * K, 2.0}, {64 * K, 1.2}, {512 * K, 1.0}, {8192 * K, 0.9}});
  u.leakage_per_bit_per_cycle = 1e-6;
  u.regfile_access_energy = 0.2;
  u.register_bit_area = 6.0;
  u.register_energy_per_bit_cycle = 2e-4;
  u.mac_energy = 1.0;
  u.queue_op_energy = 0.5;
  u.vvadd_op_energy = 1.0;
  u.logic_area_per_lane = 2000.0;
  u.logic_area_per_pe = 500.0;
  u.dram_energy_per_byte = 30.0;
  return u;
}

void UnitCosts::validate() const {
  const double scalars[] = {leakage_per_bit_per_cycle, regfile_access_energy, register_bit_area,
                            register_energy_per_bit_cycle, mac_energy, queue_op_energy, vvadd_op_energy,
                            logic_area_per_lane, logic_area_per_pe, dram_energy_per_byte};
  for (double s : scalars) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("unit costs must be finite and >= 0");
  }
  if (mask_register_bits < 0 || queue_entry_bits < 0 || pipeline_register_bits < 0 || csr_pipeline_register_bits < 0) {
    throw ParameterError("register sizes must be >= 0");
  }
  if (!(csr_utilization > 0.0 && csr_utilization <= 1.0)) throw ParameterError("csr_utilization must be in (0, 1]");
  const auto& e = sram_read_energy.knots();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].second < 0.0) throw ParameterError("sram read energy must be >= 0");
    if (i > 0 && e[i].second < e[i - 1].second) {
      throw ParameterError("sram read energy per bit must not fall as arrays grow");
    }
  }
  const auto& a = sram_area.knots();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].second < 0.0) throw ParameterError("sram area must be >= 0");
    if (i > 0 && a[i].second > a[i - 1].second) throw ParameterError("sram area per bit must not rise with size");
    if (i > 0 && a[i].first * a[i].second < a[i - 1].first * a[i - 1].second) {
      throw ParameterError("total sram area must not fall as arrays grow");
    }
  }
}

namespace {

Curve curve_from_json(const nlohmann::json& j) {
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
  return Curve(std::move(knots));
}

nlohmann::json curve_to_json(const Curve& c) {
  auto j = nlohmann::json::array();
  for (const auto& [s, v] : c.knots()) j.push_back({s, v});
  return j;
}

}  // namespace

UnitCosts unit_costs_from_json(const nlohmann::json& j, UnitCosts u) {
  if (!j.is_object()) throw ConfigError("unit costs must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "sram_read_energy") u.sram_read_energy = curve_from_json(value);
      else if (key == "sram_area") u.sram_area = curve_from_json(value);
      else if (key == "leakage_per_bit_per_cycle") u.leakage_per_bit_per_cycle = value.get<double>();
      else if (key == "regfile_access_energy") u.regfile_access_energy = value.get<double>();
      else if (key == "register_bit_area") u.register_bit_area = value.get<double>();
      else if (key == "register_energy_per_bit_cycle") u.register_energy_per_bit_cycle = value.get<double>();
      else if (key == "mac_energy") u.mac_energy = value.get<double>();
      else if (key == "queue_op_energy") u.queue_op_energy = value.get<double>();
      else if (key == "vvadd_op_energy") u.vvadd_op_energy = value.get<double>();
      else if (key == "logic_area_per_lane") u.logic_area_per_lane = value.get<double>();
      else if (key == "logic_area_per_pe") u.logic_area_per_pe = value.get<double>();
      else if (key == "dram_energy_per_byte") u.dram_energy_per_byte = value.get<double>();
      else if (key == "mask_register_bits") u.mask_register_bits = value.get<int>();
      else if (key == "queue_entry_bits") u.queue_entry_bits = value.get<int>();
      else if (key == "pipeline_register_bits") u.pipeline_register_bits = value.get<int>();
      else if (key == "csr_pipeline_register_bits") u.csr_pipeline_register_bits = value.get<int>();
      else if (key == "csr_utilization") u.csr_utilization = value.get<double>();
      else throw ConfigError("unknown unit-cost key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad unit-cost value: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  try {
    u.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return u;
}

nlohmann::json to_json(const UnitCosts& u) {
  return nlohmann::json{{"sram_read_energy", curve_to_json(u.sram_read_energy)},
                        {"sram_area", curve_to_json(u.sram_area)},
                        {"leakage_per_bit_per_cycle", u.leakage_per_bit_per_cycle},
                        {"regfile_access_energy", u.regfile_access_energy},
                        {"register_bit_area", u.register_bit_area},
                        {"register_energy_per_bit_cycle", u.register_energy_per_bit_cycle},
                        {"mac_energy", u.mac_energy},
                        {"queue_op_energy", u.queue_op_energy},
                        {"vvadd_op_energy", u.vvadd_op_energy},
                        {"logic_area_per_lane", u.logic_area_per_lane},
                        {"logic_area_per_pe", u.logic_area_per_pe},
                        {"dram_energy_per_byte", u.dram_energy_per_byte},
                        {"mask_register_bits", u.mask_register_bits},
                        {"queue_entry_bits", u.queue_entry_bits},
                        {"pipeline_register_bits", u.pipeline_register_bits},
                        {"csr_pipeline_register_bits", u.csr_pipeline_register_bits},
                        {"csr_utilization", u.csr_utilization}};
}

UnitCosts load_unit_costs(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open unit-cost file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return unit_costs_from_json(j);
}

}  // namespace masr::cost
