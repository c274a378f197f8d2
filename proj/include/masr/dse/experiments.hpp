#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "masr/cost/baseline.hpp"
#include "masr/cost/cost_model.hpp"
#include "masr/dse/sweep.hpp"
#include "masr/rnn/synthetic.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/stats.hpp"

namespace masr::dse {

/// Five bidirectional 800-unit layers, 33% weight nonzeros, 20% hidden and 40% input
/// activation nonzeros, 16 timesteps.
[[nodiscard]] rnn::SyntheticSpec standard_workload_spec();

/// Named design point with 8 activation banks, vertical balancing, and weight transfers
/// treated as hidden behind compute.
[[nodiscard]] sim::AcceleratorConfig experiment_config(const std::string& design);

struct BreakdownPoint {
  std::string id;
  sim::AcceleratorConfig config;
  std::uint64_t cycles = 0;
  double utilization = 0.0;
  sim::CycleBreakdown breakdown;
  bool golden_match = false;
};

/// Simulates each configuration on the workload, in parallel, keeping input order.
[[nodiscard]] std::vector<BreakdownPoint> breakdowns(const Workload& w, std::span<const sim::AcceleratorConfig> configs);

/// `base` with act_banks set to each value.
[[nodiscard]] std::vector<BreakdownPoint> bank_experiment(const Workload& w, sim::AcceleratorConfig base,
                                                          std::span<const int> banks);
[[nodiscard]] std::vector<BreakdownPoint> queue_experiment(const Workload& w, sim::AcceleratorConfig base,
                                                           std::span<const int> depths);
/// Every named design under every balance mode.
[[nodiscard]] std::vector<BreakdownPoint> balance_experiment(const Workload& w, std::span<const std::string> designs,
                                                             std::span<const sim::LoadBalance> modes);

struct ScalingOptions {
  std::size_t timesteps = 8;
  double recurrent_mean = 0.0;
  double recurrent_gain = 0.3;
  std::uint64_t seed = 1;
};

struct ScalingPoint {
  std::size_t hidden = 0;
  double nz = 0.0;
  double hidden_nz = 0.0;  // achieved
  std::uint64_t sparse_cycles = 0;
  std::uint64_t dense_cycles = 0;
  double speedup = 0.0;
  bool golden_match = false;
};

/// Single unidirectional layer per hidden size; weight, hidden and input densities all set
/// to nz. Speedup is the fully dense model's cycles over the sparse model's.
[[nodiscard]] std::vector<ScalingPoint> sparsity_scaling(std::span<const std::size_t> hiddens,
                                                         std::span<const double> nzs,
                                                         const sim::AcceleratorConfig& cfg,
                                                         const ScalingOptions& opts = {});

struct PredicationPoint {
  double theta = 0.0;
  double skip_fraction = 0.0;
  double mismatch_rate = 0.0;
  std::uint64_t cycles = 0;
  std::uint64_t base_cycles = 0;
  double reduction = 0.0;  // 1 - cycles / base_cycles
  bool golden_match = false;
};

[[nodiscard]] std::vector<PredicationPoint> predication_experiment(const Workload& w, sim::AcceleratorConfig cfg,
                                                                   std::span<const double> thetas);
/// Largest-reduction point whose mismatch rate is at most `max_mismatch`; nullptr if none.
[[nodiscard]] const PredicationPoint* best_predication(std::span<const PredicationPoint> points, double max_mismatch);

struct DoubleBufferPoint {
  std::size_t timesteps = 0;
  std::uint64_t transfer_cycles = 0;  // one direction's weights
  std::uint64_t compute_cycles = 0;   // one direction's pass over the utterance
  double ratio = 0.0;                 // transfer / compute
  std::uint64_t exposed_cycles = 0;   // weight and activation stalls over the whole run
  std::uint64_t dram_bytes = 0;
  bool golden_match = false;
};

/// Runs the first layer of `net` (both directions) on a fresh utterance of each length
/// with weight streaming charged.
[[nodiscard]] std::vector<DoubleBufferPoint> double_buffer_experiment(const rnn::RnnNetwork& net,
                                                                      sim::AcceleratorConfig cfg,
                                                                      std::span<const std::size_t> timesteps,
                                                                      double input_nz, std::uint64_t seed);

struct CostPoint {
  std::string design;
  cost::DesignCost cost;
  sim::SimStats stats;
  bool golden_match = false;
};

/// MASR cost at each named design point.
[[nodiscard]] std::vector<CostPoint> design_costs(const Workload& w, std::span<const std::string> designs,
                                                  const cost::UnitCosts& units);

/// EIE and ESE at each PE count.
[[nodiscard]] std::vector<cost::BaselineResult> baseline_costs(const Workload& w, std::span<const int> pes,
                                                               const cost::UnitCosts& units);

struct EncodingPoint {
  std::size_t partitions = 0;
  std::string format;
  std::uint64_t value_bits = 0;
  std::uint64_t mask_bits = 0;
  std::uint64_t row_offset_bits = 0;
  std::uint64_t column_index_bits = 0;
  std::uint64_t metadata_bits = 0;
  std::uint64_t total_bits = 0;
};

/// Footprint of one matrix in every format across partition counts.
[[nodiscard]] std::vector<EncodingPoint> encoding_experiment(const rnn::CompactMatrix& m,
                                                             std::span<const std::size_t> partitions);

}  // namespace masr::dse
