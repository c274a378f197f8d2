#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace masr::sim {

enum class LoadBalance { none, horizontal, vertical, both };

[[nodiscard]] std::string to_string(LoadBalance lb);
/// Accepts none|horizontal|vertical|both (also hlb, vlb). Throws ConfigError otherwise.
[[nodiscard]] LoadBalance parse_load_balance(std::string_view s);

/// SRAM provisioning. Zero means "size to the largest footprint", which never overflows.
struct Capacities {
  std::uint64_t weight_bytes_per_lane = 0;
  std::uint64_t mask_bytes_per_lane = 0;
  std::uint64_t act_bytes = 0;
  friend bool operator==(const Capacities&, const Capacities&) = default;
};

struct AcceleratorConfig {
  int horiz_lanes = 32;
  int vert_lanes = 32;
  int horiz_pes = 1;
  int queue_depth = 1;
  int act_banks = 1;
  int act_word_bits = 60;
  int weight_word_bits = 10;
  LoadBalance load_balance = LoadBalance::none;
  double dup_fraction = 0.10;
  /// Columns past the neighbour's current one that a stealing lane may look into.
  int steal_lookahead = 8;
  /// Also duplicate each lane's head rows into the ring neighbour on the other side, so a
  /// lane can shed work in both ring directions.
  bool steal_both_ways = false;
  std::optional<double> predication_theta;
  double dram_bytes_per_cycle = 25.6;
  int onchip_act_timesteps = 333;
  /// Charge DRAM transfers that compute cannot hide. Off models the steady state of long
  /// utterances, where every transfer hides behind compute; traffic is counted either way.
  bool stream_weights = true;
  int fill_cycles = 5;
  Capacities capacities;

  [[nodiscard]] int total_lanes() const noexcept { return horiz_lanes * vert_lanes; }
  /// Canonical identifier, e.g. "h32v32p1-q1-b8-vertical". Sorting by it orders sweeps.
  [[nodiscard]] std::string id() const;
  friend bool operator==(const AcceleratorConfig&, const AcceleratorConfig&) = default;
};

/// Quantities that follow from a valid configuration.
struct DerivedConfig {
  int lanes = 0;
  int lanes_per_pe = 0;
  int pes = 0;
  int regfile_words = 0;      // activation register file per PE, in act words
  int vvadd_per_cycle = 0;    // elements combined per VVAdd cycle
  int acts_per_word = 0;
};

/// Checks every constraint and reports all violations in one ConfigError.
DerivedConfig validate_config(const AcceleratorConfig& cfg);

/// Named design points: LANESx32 .. LANESx1024.
[[nodiscard]] AcceleratorConfig table4_config(std::string_view name);
[[nodiscard]] std::vector<std::string> table4_names();

}  // namespace masr::sim
