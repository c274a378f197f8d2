#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "masr/rnn/types.hpp"
#include "masr/sim/config.hpp"

namespace masr::sim {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
  [[nodiscard]] bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Part i of n items split into `parts` contiguous ranges; the first n % parts get one extra.
[[nodiscard]] Range even_tile(std::size_t n, std::size_t parts, std::size_t i) noexcept;

/// Lane (h, v) owns columns of horizontal slice h and rows of vertical slice v.
/// Lane index is v * horiz_lanes + h.
struct LaneTile {
  int h = 0;
  int v = 0;
  Range rows;
  Range cols;
  /// First row of the tail that neighbours hold duplicated copies of.
  std::size_t dup_begin = 0;
  /// End of the head rows duplicated into the other ring neighbour (== rows.begin if none).
  std::size_t head_end = 0;
};

struct TileMap {
  int horiz_lanes = 1;
  int vert_lanes = 1;
  int lanes_per_pe = 1;
  std::vector<LaneTile> lanes;

  [[nodiscard]] std::size_t index(int h, int v) const noexcept {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(horiz_lanes) + static_cast<std::size_t>(h);
  }
  /// Ring neighbour across vertical PEs: (h, v + 1).
  [[nodiscard]] std::size_t vertical_neighbor(std::size_t lane) const noexcept;
  /// Ring neighbour inside the same PE: next horizontal lane sharing the register file.
  [[nodiscard]] std::size_t horizontal_neighbor(std::size_t lane) const noexcept;
  /// The other way round each ring.
  [[nodiscard]] std::size_t vertical_prev(std::size_t lane) const noexcept;
  [[nodiscard]] std::size_t horizontal_prev(std::size_t lane) const noexcept;
};

/// Rows in [0, rows) split over vertical lanes, cols split over horizontal lanes.
[[nodiscard]] TileMap tile_matrix(std::size_t rows, std::size_t cols, const AcceleratorConfig& cfg);

struct LaneFootprint {
  std::uint64_t weight_bits = 0;      // own compact values
  std::uint64_t mask_bits = 0;        // own weight masks
  std::uint64_t dup_weight_bits = 0;  // neighbours' duplicated tails (values)
  std::uint64_t dup_mask_bits = 0;

  [[nodiscard]] std::uint64_t weight_bytes() const noexcept { return (weight_bits + dup_weight_bits + 7) / 8; }
  [[nodiscard]] std::uint64_t mask_bytes() const noexcept { return (mask_bits + dup_mask_bits + 7) / 8; }
};

/// Per-lane storage for one layer (all four matrices) and the worst case over layers.
struct LaneAssignment {
  TileMap input_tiles;   // layer-0 input matrices
  TileMap hidden_tiles;  // recurrent matrices (and inputs of later layers)
  std::vector<std::vector<LaneFootprint>> per_layer;  // [layer][lane]
  LaneFootprint max_lane;                             // elementwise max over layers and lanes
  std::uint64_t act_bytes = 0;                        // on-chip activation buffer demand
};

/// Tiles every matrix of the network and sizes the per-lane SRAMs. Throws CapacityError
/// when a nonzero capacity in cfg is exceeded.
[[nodiscard]] LaneAssignment partition(const rnn::RnnNetwork& net, const AcceleratorConfig& cfg);

}  // namespace masr::sim
