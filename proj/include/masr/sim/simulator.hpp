#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "masr/rnn/forward.hpp"
#include "masr/rnn/types.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/lane_engine.hpp"
#include "masr/sim/partition.hpp"
#include "masr/sim/stats.hpp"

namespace masr::sim {

struct TimestepResult {
  rnn::CompactVector state;
  std::uint64_t cycles = 0;
};

/// Holds the lane engine and tile maps for one configuration. Not thread-safe; use one
/// instance per concurrent run.
class Simulator {
 public:
  explicit Simulator(const AcceleratorConfig& cfg);

  /// One timestep of one direction: W_h h^{t-1}, then W_x x^t (predicated if configured),
  /// then VVAdd + ReLU + compact write-back. Cycles and counters go to `stats`.
  TimestepResult timestep(const rnn::RnnLayer& layer, bool backward, const rnn::CompactVector& x,
                          const QuantParams& input_quant, const rnn::CompactVector& h_prev, SimStats& stats);

  [[nodiscard]] const AcceleratorConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const DerivedConfig& derived() const noexcept { return derived_; }

 private:
  const TileMap& tiles(std::size_t rows, std::size_t cols);

  AcceleratorConfig cfg_;
  DerivedConfig derived_;
  LaneEngine engine_;
  std::map<std::pair<std::size_t, std::size_t>, TileMap> tile_cache_;
  std::vector<rnn::SplitAccumulator> hid_, inp_;
  std::vector<char> active_;
};

[[nodiscard]] TimestepResult simulate_timestep(const rnn::RnnLayer& layer, bool backward,
                                               const rnn::CompactVector& x, const QuantParams& input_quant,
                                               const rnn::CompactVector& h_prev, const AcceleratorConfig& cfg,
                                               SimStats& stats);

struct SimResult {
  std::vector<rnn::CompactVector> outputs;
  QuantParams output_quant;
  SimStats stats;
  std::uint64_t predicated_neurons = 0;
  std::uint64_t evaluated_neurons = 0;
  std::vector<std::uint64_t> pass_cycles;  // compute cycles of each (layer, direction) pass
};

/// Whole utterance, layer by layer, forward pass then backward pass. Weight transfers for
/// the next pass overlap the current one; only the excess is exposed.
[[nodiscard]] SimResult simulate_network(const rnn::RnnNetwork& net, const rnn::Utterance& utterance,
                                         const AcceleratorConfig& cfg);

/// Bytes moved from DRAM to load one direction's weights (values and masks).
[[nodiscard]] std::uint64_t pass_weight_bytes(const rnn::CompactMatrix& input, const rnn::CompactMatrix& hidden);

/// Cycles to move `bytes` at the configured bandwidth.
[[nodiscard]] std::uint64_t transfer_cycles(std::uint64_t bytes, double bytes_per_cycle) noexcept;

}  // namespace masr::sim
