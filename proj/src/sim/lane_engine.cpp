#include "masr/sim/lane_engine.hpp"

#include <algorithm>

#include "masr/common/error.hpp"
#include "masr/sparse/bitmask.hpp"

namespace masr::sim {

LaneEngine::LaneEngine(const AcceleratorConfig& cfg) : cfg_(cfg), derived_(validate_config(cfg)) {
  lanes_.resize(static_cast<std::size_t>(derived_.lanes));
  cols_.resize(static_cast<std::size_t>(cfg.horiz_lanes));
}

void LaneEngine::execute(const Item& item, std::size_t col) {
  if (item.w == 0 || item.a == 0) throw IntegrityError("MAC issued with a zero operand");
  out_[col].add(item.w, item.a);
}

void LaneEngine::finish_column(Lane& lane, SimStats& stats) {
  if (lane.queued < static_cast<std::uint32_t>(cfg_.queue_depth)) {
    ++lane.queued;
    ++stats.queue_pushes;
    ++lane.cur;
    if (lane.cur < lane.start.size() - 1) lane.lo = lane.start[lane.cur];
    lane.blocked = false;
  } else {
    lane.blocked = true;
  }
}

bool LaneEngine::steal_from(std::size_t nb, bool head, SimStats& stats) {
  Lane& n = lanes_[nb];
  if (!n.participates) return false;
  const std::size_t ncols = n.start.size() - 1;
  const std::size_t first = n.cur + (n.blocked ? 1 : 0);
  const std::size_t last = std::min(ncols, first + 1 + static_cast<std::size_t>(cfg_.steal_lookahead));
  const auto& cols = cols_[static_cast<std::size_t>(tiles_->lanes[nb].h)];
  for (std::size_t k = first; k < last; ++k) {
    std::uint32_t& lo = k == n.cur ? n.lo : n.start[k];
    if (n.hi[k] <= lo) continue;
    // the tail is taken from the top, the head from the bottom, so the owner's own
    // ascending walk meets the stealers somewhere in between
    if (head) {
      if (n.items[lo].row >= n.head_end) continue;
      execute(n.items[lo++], cols[k]);
    } else {
      if (n.items[n.hi[k] - 1].row < n.tail_begin) continue;
      --n.hi[k];
      execute(n.items[n.hi[k]], cols[k]);
    }
    ++stats.steals;
    ++stats.mac_count;
    stats.sram_reads.weight += wbits_;
    ++stats.regfile_reads;
    // taking the last row of the neighbour's open column completes it on its behalf
    if (k == n.cur && !n.blocked && n.lo == n.hi[k]) finish_column(n, stats);
    return true;
  }
  return false;
}

bool LaneEngine::try_steal(std::size_t lane, SimStats& stats) {
  const auto mode = cfg_.load_balance;
  if (mode == LoadBalance::vertical || mode == LoadBalance::both) {
    const std::size_t nb = tiles_->vertical_neighbor(lane);
    if (nb != lane && steal_from(nb, false, stats)) return true;
    const std::size_t pv = tiles_->vertical_prev(lane);
    if (cfg_.steal_both_ways && pv != lane && steal_from(pv, true, stats)) return true;
  }
  if (mode == LoadBalance::horizontal || mode == LoadBalance::both) {
    const std::size_t nb = tiles_->horizontal_neighbor(lane);
    if (nb != lane && steal_from(nb, false, stats)) return true;
    const std::size_t pv = tiles_->horizontal_prev(lane);
    if (cfg_.steal_both_ways && pv != lane && steal_from(pv, true, stats)) return true;
  }
  return false;
}

std::uint64_t LaneEngine::run_matvec(const TileMap& tiles, const rnn::CompactMatrix& w, const rnn::CompactVector& a,
                                     std::span<const char> active, std::span<rnn::SplitAccumulator> out,
                                     SimStats& stats) {
  if (a.dim() != w.rows()) throw DimensionError("activation length differs from matrix rows");
  if (out.size() != w.cols()) throw DimensionError("accumulator count differs from matrix columns");
  if (!active.empty() && active.size() != w.cols()) throw DimensionError("active flags differ from matrix columns");
  if (tiles.lanes.size() != lanes_.size()) throw IntegrityError("tile map built for another topology");
  if (stats.lanes.size() != lanes_.size()) stats.lanes.resize(lanes_.size());
  tiles_ = &tiles;
  out_ = out;

  const auto H = static_cast<std::size_t>(cfg_.horiz_lanes);
  const auto V = static_cast<std::size_t>(cfg_.vert_lanes);
  const auto wbits = static_cast<std::uint64_t>(w.quant().bits);
  wbits_ = wbits;
  const auto abits = static_cast<std::uint64_t>(cfg_.weight_word_bits);
  const bool balancing = cfg_.load_balance != LoadBalance::none;

  std::size_t total_cols = 0;
  for (std::size_t h = 0; h < H; ++h) {
    auto& cols = cols_[h];
    cols.clear();
    const Range cr = tiles.lanes[tiles.index(static_cast<int>(h), 0)].cols;
    for (std::size_t c = cr.begin; c < cr.end; ++c) {
      if (active.empty() || active[c] != 0) cols.push_back(static_cast<std::uint32_t>(c));
    }
    total_cols += cols.size();
  }
  if (total_cols == 0) return 0;

  // work lists
  for (std::size_t l = 0; l < lanes_.size(); ++l) {
    Lane& lane = lanes_[l];
    const LaneTile& t = tiles.lanes[l];
    const auto& cols = cols_[static_cast<std::size_t>(t.h)];
    lane.items.clear();
    lane.start.assign(1, 0);
    lane.cur = 0;
    lane.lo = 0;
    lane.queued = 0;
    lane.blocked = false;
    lane.tail_begin = t.dup_begin;
    lane.head_end = t.head_end;
    lane.participates = t.rows.size() > 0 && !cols.empty();
    if (!lane.participates) {
      lane.start.clear();
      lane.start.push_back(0);
      lane.hi.clear();
      continue;
    }
    for (std::uint32_t c : cols) {
      const auto& col = w.column(c);
      sparse::for_each_and_bit(col.mask(), a.mask(), t.rows.begin, t.rows.end, [&](std::size_t r) {
        lane.items.push_back(Item{static_cast<std::uint32_t>(r), col.values()[col.address(r)],
                                  a.values()[a.address(r)]});
      });
      lane.start.push_back(static_cast<std::uint32_t>(lane.items.size()));
    }
    lane.hi.assign(lane.start.begin() + 1, lane.start.end());
    stats.work_mask_popcount += lane.items.size();
    stats.sram_reads.weight_mask += static_cast<std::uint64_t>(t.rows.size()) * cols.size();
  }

  // activation register file loads: each PE of vertical slice v takes its rows
  for (std::size_t v = 0; v < V; ++v) {
    const LaneTile& t = tiles.lanes[tiles.index(0, static_cast<int>(v))];
    std::uint64_t nnz = a.mask().popcount_range(t.rows.begin, t.rows.end);
    std::uint64_t mask_bits = t.rows.size();
    if (cfg_.load_balance == LoadBalance::vertical || cfg_.load_balance == LoadBalance::both) {
      const LaneTile& nt = tiles.lanes[tiles.vertical_neighbor(tiles.index(0, static_cast<int>(v)))];
      if (nt.v != t.v) {
        nnz += a.mask().popcount_range(nt.dup_begin, nt.rows.end);
        mask_bits += nt.rows.end - nt.dup_begin;
      }
      const LaneTile& pt = tiles.lanes[tiles.vertical_prev(tiles.index(0, static_cast<int>(v)))];
      if (pt.v != t.v) {
        nnz += a.mask().popcount_range(pt.rows.begin, pt.head_end);
        mask_bits += pt.head_end - pt.rows.begin;
      }
    }
    const auto pes = static_cast<std::uint64_t>(cfg_.horiz_pes);
    stats.sram_reads.act += pes * nnz * abits;
    stats.sram_reads.act_mask += pes * mask_bits;
    stats.regfile_writes += pes * nnz;
  }

  const auto fill = static_cast<std::uint64_t>(cfg_.fill_cycles);
  for (auto& lc : stats.lanes) lc.frontend += fill;
  stats.fill_cycles += fill;

  std::vector<std::size_t> pos(H, 0);
  std::size_t groups_left = 0;
  for (std::size_t h = 0; h < H; ++h) groups_left += cols_[h].empty() ? 0 : 1;

  std::uint64_t cycles = 0;
  while (groups_left > 0) {
    ++cycles;
    bool popped = false;
    for (std::size_t h = 0; h < H; ++h) {
      if (pos[h] >= cols_[h].size()) continue;
      bool ready = true;
      std::size_t members = 0;
      for (std::size_t v = 0; v < V && ready; ++v) {
        const Lane& lane = lanes_[tiles.index(static_cast<int>(h), static_cast<int>(v))];
        if (!lane.participates) continue;
        ++members;
        ready = lane.queued > 0;
      }
      if (!ready) continue;
      for (std::size_t v = 0; v < V; ++v) {
        Lane& lane = lanes_[tiles.index(static_cast<int>(h), static_cast<int>(v))];
        if (lane.participates) --lane.queued;
      }
      stats.queue_pops += members;
      popped = true;
      if (++pos[h] == cols_[h].size()) --groups_left;
    }
    if (popped) ++stats.accumulate_cycles;
    if (groups_left == 0) {
      for (auto& lc : stats.lanes) ++lc.idle;
      break;
    }

    for (std::size_t l = 0; l < lanes_.size(); ++l) {
      Lane& lane = lanes_[l];
      LaneCycles& lc = stats.lanes[l];
      if (!lane.participates) {
        ++lc.idle;
        continue;
      }
      if (lane.blocked) {
        finish_column(lane, stats);
        if (lane.blocked) {
          if (balancing && try_steal(l, stats)) {
            ++lc.mac_busy;
          } else {
            ++lc.stall;
          }
          continue;
        }
      }
      const std::size_t ncols = lane.start.size() - 1;
      if (lane.cur >= ncols) {
        if (balancing && try_steal(l, stats)) {
          ++lc.mac_busy;
        } else {
          ++lc.idle;
        }
        continue;
      }
      if (lane.lo == lane.hi[lane.cur]) {
        ++lc.frontend;
        finish_column(lane, stats);
        continue;
      }
      execute(lane.items[lane.lo], cols_[static_cast<std::size_t>(tiles.lanes[l].h)][lane.cur]);
      ++lane.lo;
      ++lc.mac_busy;
      ++stats.mac_count;
      stats.sram_reads.weight += wbits;
      ++stats.regfile_reads;
      if (lane.lo == lane.hi[lane.cur]) finish_column(lane, stats);
    }
  }
  stats.matvec_cycles += fill + cycles;
  return fill + cycles;
}

}  // namespace masr::sim
