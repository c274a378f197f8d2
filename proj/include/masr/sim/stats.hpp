#pragma once

#include <cstdint>
#include <vector>

namespace masr::sim {

/// Where one lane spent each cycle. Cycles in VVAdd and exposed DRAM waits count as idle.
struct LaneCycles {
  std::uint64_t mac_busy = 0;
  std::uint64_t idle = 0;
  std::uint64_t stall = 0;
  std::uint64_t frontend = 0;

  [[nodiscard]] std::uint64_t total() const noexcept { return mac_busy + idle + stall + frontend; }
  LaneCycles& operator+=(const LaneCycles& o) noexcept;
  friend bool operator==(const LaneCycles&, const LaneCycles&) = default;
};

/// SRAM traffic in bits.
struct SramReads {
  std::uint64_t weight = 0;
  std::uint64_t weight_mask = 0;
  std::uint64_t act = 0;
  std::uint64_t act_mask = 0;
  SramReads& operator+=(const SramReads& o) noexcept;
  friend bool operator==(const SramReads&, const SramReads&) = default;
};

struct SimStats {
  std::uint64_t total_cycles = 0;
  std::vector<LaneCycles> lanes;

  std::uint64_t matvec_cycles = 0;
  std::uint64_t fill_cycles = 0;
  std::uint64_t vvadd_cycles = 0;
  std::uint64_t accumulate_cycles = 0;      // cycles in which at least one column drained
  std::uint64_t weight_load_cycles = 0;     // transfer time of streamed weights
  std::uint64_t weight_exposed_cycles = 0;  // part of it not hidden behind compute
  std::uint64_t act_load_cycles = 0;
  std::uint64_t act_exposed_cycles = 0;
  std::uint64_t preload_cycles = 0;  // cold start before the first pass; not in total_cycles

  std::uint64_t mac_count = 0;
  std::uint64_t work_mask_popcount = 0;  // sum of popcount(weight mask & act mask) scheduled
  std::uint64_t steals = 0;
  std::uint64_t predicated_columns = 0;

  SramReads sram_reads;
  std::uint64_t act_write_bits = 0;
  std::uint64_t bias_reads = 0;
  std::uint64_t regfile_reads = 0;
  std::uint64_t regfile_writes = 0;
  std::uint64_t queue_pushes = 0;
  std::uint64_t queue_pops = 0;
  std::uint64_t vvadd_ops = 0;
  std::uint64_t dram_bytes = 0;

  [[nodiscard]] double utilization() const noexcept;
  [[nodiscard]] std::uint64_t exposed_dram_cycles() const noexcept {
    return weight_exposed_cycles + act_exposed_cycles;
  }
  /// Lane-summed cycle categories.
  [[nodiscard]] LaneCycles lane_totals() const noexcept;
  /// Throws IntegrityError if any lane's categories do not sum to total_cycles.
  void check_accounting() const;
  /// Append another run segment (same lane count). Lane cycles and counters add.
  SimStats& operator+=(const SimStats& o);
};

struct CycleBreakdown {
  double mac_busy = 0.0;
  double stall = 0.0;
  double idle = 0.0;  // excludes VVAdd and DRAM waits
  double frontend = 0.0;
  double vvadd = 0.0;
  double dram = 0.0;

  [[nodiscard]] double sum() const noexcept { return mac_busy + stall + idle + frontend + vvadd + dram; }
};

/// Lane-cycle fractions over lanes x total_cycles; sums to 1.
[[nodiscard]] CycleBreakdown cycle_breakdown(const SimStats& stats);

}  // namespace masr::sim
