#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "masr/rnn/kernels.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/partition.hpp"
#include "masr/sim/stats.hpp"

namespace masr::sim {

/// Cycle-stepped model of the lane array for one matrix-vector product.
///
/// Each lane walks its columns in order. A column with k work-mask bits in the lane's rows
/// takes k back-end cycles (one MAC each); a column with none takes one front-end cycle.
/// The finished partial goes to the lane's queue; a full queue stalls the lane. Per
/// horizontal slice an accumulator pops one column per cycle once every vertical lane has
/// queued it. With balancing on, a lane that would stall or idle instead executes one row
/// from the duplicated tail of its ring neighbour's pending columns.
class LaneEngine {
 public:
  explicit LaneEngine(const AcceleratorConfig& cfg);

  /// Adds W^T a into `out` (one accumulator per column) and returns the cycles taken,
  /// pipeline fill included. Columns with active[c] == 0 are skipped; empty `active`
  /// means all. Lane cycles and traffic counters are added to `stats`.
  std::uint64_t run_matvec(const TileMap& tiles, const rnn::CompactMatrix& w, const rnn::CompactVector& a,
                           std::span<const char> active, std::span<rnn::SplitAccumulator> out, SimStats& stats);

 private:
  struct Item {
    std::uint32_t row;
    rnn::Code w;
    rnn::Code a;
  };
  struct Lane {
    std::vector<Item> items;
    std::vector<std::uint32_t> start;  // column k owns items [start[k], hi[k])
    std::vector<std::uint32_t> hi;     // shrinks as neighbours steal from the top
    std::uint32_t cur = 0;
    std::uint32_t lo = 0;
    std::uint32_t queued = 0;
    std::size_t tail_begin = 0;
    std::size_t head_end = 0;
    bool blocked = false;
    bool participates = false;
  };

  bool try_steal(std::size_t lane, SimStats& stats);
  bool steal_from(std::size_t nb, bool head, SimStats& stats);
  void finish_column(Lane& lane, SimStats& stats);
  void execute(const Item& item, std::size_t col);

  AcceleratorConfig cfg_;
  DerivedConfig derived_;
  const TileMap* tiles_ = nullptr;
  std::vector<Lane> lanes_;
  std::vector<std::vector<std::uint32_t>> cols_;  // active columns per horizontal slice
  std::span<rnn::SplitAccumulator> out_;
  std::uint64_t wbits_ = 0;
};

}  // namespace masr::sim
