#include "masr/sim/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "masr/common/error.hpp"
#include "masr/sparse/bitmask.hpp"

namespace masr::sim {

Range even_tile(std::size_t n, std::size_t parts, std::size_t i) noexcept {
  const std::size_t base = n / parts;
  const std::size_t extra = n % parts;
  const std::size_t begin = i * base + std::min(i, extra);
  return {begin, begin + base + (i < extra ? 1 : 0)};
}

std::size_t TileMap::vertical_neighbor(std::size_t lane) const noexcept {
  const auto& t = lanes[lane];
  return index(t.h, (t.v + 1) % vert_lanes);
}

std::size_t TileMap::horizontal_neighbor(std::size_t lane) const noexcept {
  const auto& t = lanes[lane];
  const int base = t.h - t.h % lanes_per_pe;
  return index(base + (t.h - base + 1) % lanes_per_pe, t.v);
}

std::size_t TileMap::vertical_prev(std::size_t lane) const noexcept {
  const auto& t = lanes[lane];
  return index(t.h, (t.v + vert_lanes - 1) % vert_lanes);
}

std::size_t TileMap::horizontal_prev(std::size_t lane) const noexcept {
  const auto& t = lanes[lane];
  const int base = t.h - t.h % lanes_per_pe;
  return index(base + (t.h - base + lanes_per_pe - 1) % lanes_per_pe, t.v);
}

TileMap tile_matrix(std::size_t rows, std::size_t cols, const AcceleratorConfig& cfg) {
  const DerivedConfig d = validate_config(cfg);
  TileMap m;
  m.horiz_lanes = cfg.horiz_lanes;
  m.vert_lanes = cfg.vert_lanes;
  m.lanes_per_pe = d.lanes_per_pe;
  m.lanes.resize(static_cast<std::size_t>(d.lanes));
  for (int v = 0; v < cfg.vert_lanes; ++v) {
    const Range r = even_tile(rows, static_cast<std::size_t>(cfg.vert_lanes), static_cast<std::size_t>(v));
    // floor keeps the duplicated share at or below dup_fraction
    const auto dup = static_cast<std::size_t>(std::floor(cfg.dup_fraction * static_cast<double>(r.size()) + 1e-9));
    for (int h = 0; h < cfg.horiz_lanes; ++h) {
      auto& t = m.lanes[m.index(h, v)];
      t.h = h;
      t.v = v;
      t.rows = r;
      t.cols = even_tile(cols, static_cast<std::size_t>(cfg.horiz_lanes), static_cast<std::size_t>(h));
      const bool lb = cfg.load_balance != LoadBalance::none;
      t.dup_begin = lb ? r.end - dup : r.end;
      t.head_end = lb && cfg.steal_both_ways ? r.begin + std::min(dup, r.size() - dup) : r.begin;
    }
  }
  return m;
}

namespace {

struct TileCount {
  std::uint64_t nnz = 0;
  std::uint64_t dup_nnz = 0;
  std::uint64_t head_nnz = 0;
};

TileCount count_tile(const rnn::CompactMatrix& w, const LaneTile& t) {
  TileCount c;
  for (std::size_t col = t.cols.begin; col < t.cols.end; ++col) {
    const auto& m = w.column(col).mask();
    c.nnz += m.popcount_range(t.rows.begin, t.rows.end);
    c.dup_nnz += m.popcount_range(t.dup_begin, t.rows.end);
    c.head_nnz += m.popcount_range(t.rows.begin, t.head_end);
  }
  return c;
}

void add_matrix(const rnn::CompactMatrix& w, const TileMap& tiles, const AcceleratorConfig& cfg,
                std::vector<LaneFootprint>& fp) {
  const auto bits = static_cast<std::uint64_t>(w.quant().bits);
  std::vector<TileCount> counts(tiles.lanes.size());
  for (std::size_t l = 0; l < tiles.lanes.size(); ++l) counts[l] = count_tile(w, tiles.lanes[l]);
  for (std::size_t l = 0; l < tiles.lanes.size(); ++l) {
    const auto& t = tiles.lanes[l];
    fp[l].weight_bits += counts[l].nnz * bits;
    fp[l].mask_bits += t.rows.size() * t.cols.size();
    auto take_tail = [&](std::size_t nb) {
      const auto& nt = tiles.lanes[nb];
      if (nb == l) return;
      fp[l].dup_weight_bits += counts[nb].dup_nnz * bits;
      fp[l].dup_mask_bits += (nt.rows.end - nt.dup_begin) * nt.cols.size();
    };
    auto take_head = [&](std::size_t nb) {
      const auto& nt = tiles.lanes[nb];
      if (nb == l) return;
      fp[l].dup_weight_bits += counts[nb].head_nnz * bits;
      fp[l].dup_mask_bits += (nt.head_end - nt.rows.begin) * nt.cols.size();
    };
    if (cfg.load_balance == LoadBalance::vertical || cfg.load_balance == LoadBalance::both) {
      take_tail(tiles.vertical_neighbor(l));
      take_head(tiles.vertical_prev(l));
    }
    if (cfg.load_balance == LoadBalance::horizontal || cfg.load_balance == LoadBalance::both) {
      take_tail(tiles.horizontal_neighbor(l));
      take_head(tiles.horizontal_prev(l));
    }
  }
}

}  // namespace

LaneAssignment partition(const rnn::RnnNetwork& net, const AcceleratorConfig& cfg) {
  net.validate();
  LaneAssignment a;
  a.input_tiles = tile_matrix(net.input_dim(), net.layers.front().hidden(), cfg);
  a.hidden_tiles = tile_matrix(net.layers.front().hidden(), net.layers.front().hidden(), cfg);
  const bool bidir = net.direction == rnn::Direction::bidirectional;
  for (const auto& layer : net.layers) {
    std::vector<LaneFootprint> fp(a.hidden_tiles.lanes.size());
    const TileMap in = tile_matrix(layer.input_dim(), layer.hidden(), cfg);
    const TileMap hid = tile_matrix(layer.hidden(), layer.hidden(), cfg);
    add_matrix(layer.wx, in, cfg, fp);
    add_matrix(layer.wh, hid, cfg, fp);
    if (bidir) {
      add_matrix(layer.vx, in, cfg, fp);
      add_matrix(layer.vh, hid, cfg, fp);
    }
    for (const auto& f : fp) {
      a.max_lane.weight_bits = std::max(a.max_lane.weight_bits, f.weight_bits);
      a.max_lane.mask_bits = std::max(a.max_lane.mask_bits, f.mask_bits);
      a.max_lane.dup_weight_bits = std::max(a.max_lane.dup_weight_bits, f.dup_weight_bits);
      a.max_lane.dup_mask_bits = std::max(a.max_lane.dup_mask_bits, f.dup_mask_bits);
    }
    a.per_layer.push_back(std::move(fp));
    // layer inputs and outputs for the on-chip window, dense-provisioned
    const std::uint64_t words = static_cast<std::uint64_t>(layer.input_dim() + layer.hidden()) *
                                static_cast<std::uint64_t>(cfg.onchip_act_timesteps);
    a.act_bytes = std::max(a.act_bytes, (words * static_cast<std::uint64_t>(layer.act.bits) + 7) / 8);
  }
  const auto& c = cfg.capacities;
  if (c.weight_bytes_per_lane != 0 && a.max_lane.weight_bytes() > c.weight_bytes_per_lane) {
    throw CapacityError("weights need " + std::to_string(a.max_lane.weight_bytes()) + " bytes per lane, capacity is " +
                        std::to_string(c.weight_bytes_per_lane));
  }
  if (c.mask_bytes_per_lane != 0 && a.max_lane.mask_bytes() > c.mask_bytes_per_lane) {
    throw CapacityError("weight masks need " + std::to_string(a.max_lane.mask_bytes()) +
                        " bytes per lane, capacity is " + std::to_string(c.mask_bytes_per_lane));
  }
  if (c.act_bytes != 0 && a.act_bytes > c.act_bytes) {
    throw CapacityError("activations need " + std::to_string(a.act_bytes) + " bytes, capacity is " +
                        std::to_string(c.act_bytes));
  }
  return a;
}

}  // namespace masr::sim
