#include "masr/sim/stats.hpp"

#include <string>

#include "masr/common/error.hpp"

namespace masr::sim {

LaneCycles& LaneCycles::operator+=(const LaneCycles& o) noexcept {
  mac_busy += o.mac_busy;
  idle += o.idle;
  stall += o.stall;
  frontend += o.frontend;
  return *this;
}

SramReads& SramReads::operator+=(const SramReads& o) noexcept {
  weight += o.weight;
  weight_mask += o.weight_mask;
  act += o.act;
  act_mask += o.act_mask;
  return *this;
}

double SimStats::utilization() const noexcept {
  if (total_cycles == 0 || lanes.empty()) return 0.0;
  return static_cast<double>(mac_count) / (static_cast<double>(lanes.size()) * static_cast<double>(total_cycles));
}

LaneCycles SimStats::lane_totals() const noexcept {
  LaneCycles t;
  for (const auto& l : lanes) t += l;
  return t;
}

void SimStats::check_accounting() const {
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (lanes[i].total() != total_cycles) {
      throw IntegrityError("lane " + std::to_string(i) + " accounts for " + std::to_string(lanes[i].total()) +
                           " cycles, run took " + std::to_string(total_cycles));
    }
  }
}

SimStats& SimStats::operator+=(const SimStats& o) {
  if (lanes.empty()) lanes.resize(o.lanes.size());
  if (lanes.size() != o.lanes.size()) throw IntegrityError("merging stats of different lane counts");
  for (std::size_t i = 0; i < lanes.size(); ++i) lanes[i] += o.lanes[i];
  total_cycles += o.total_cycles;
  matvec_cycles += o.matvec_cycles;
  fill_cycles += o.fill_cycles;
  vvadd_cycles += o.vvadd_cycles;
  accumulate_cycles += o.accumulate_cycles;
  weight_load_cycles += o.weight_load_cycles;
  weight_exposed_cycles += o.weight_exposed_cycles;
  act_load_cycles += o.act_load_cycles;
  act_exposed_cycles += o.act_exposed_cycles;
  preload_cycles += o.preload_cycles;
  mac_count += o.mac_count;
  work_mask_popcount += o.work_mask_popcount;
  steals += o.steals;
  predicated_columns += o.predicated_columns;
  sram_reads += o.sram_reads;
  act_write_bits += o.act_write_bits;
  bias_reads += o.bias_reads;
  regfile_reads += o.regfile_reads;
  regfile_writes += o.regfile_writes;
  queue_pushes += o.queue_pushes;
  queue_pops += o.queue_pops;
  vvadd_ops += o.vvadd_ops;
  dram_bytes += o.dram_bytes;
  return *this;
}

CycleBreakdown cycle_breakdown(const SimStats& stats) {
  CycleBreakdown b;
  if (stats.total_cycles == 0 || stats.lanes.empty()) return b;
  const double denom = static_cast<double>(stats.lanes.size()) * static_cast<double>(stats.total_cycles);
  const LaneCycles t = stats.lane_totals();
  const double n = static_cast<double>(stats.lanes.size());
  b.mac_busy = static_cast<double>(t.mac_busy) / denom;
  b.stall = static_cast<double>(t.stall) / denom;
  b.frontend = static_cast<double>(t.frontend) / denom;
  b.vvadd = n * static_cast<double>(stats.vvadd_cycles) / denom;
  b.dram = n * static_cast<double>(stats.exposed_dram_cycles()) / denom;
  b.idle = static_cast<double>(t.idle) / denom - b.vvadd - b.dram;
  return b;
}

}  // namespace masr::sim
