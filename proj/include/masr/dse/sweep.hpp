#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "masr/cost/cost_model.hpp"
#include "masr/cost/unit_costs.hpp"
#include "masr/dse/config_io.hpp"
#include "masr/dse/pareto.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/types.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/stats.hpp"

namespace masr::dse {

/// Timesteps of activations the cost model provisions on chip.
inline constexpr int kActWindow = 333;

/// A loaded or generated model with its reference outputs.
struct Workload {
  std::string name;
  std::uint64_t seed = 0;
  rnn::RnnNetwork net;
  rnn::Utterance utterance;
  rnn::NetworkResult golden;  // unpredicated
  std::uint64_t act_storage_bits = 0;
};

/// Loads or generates the workload; `seed` replaces the synthetic seed (and the seed of a
/// generated utterance for saved models).
[[nodiscard]] Workload prepare_workload(const WorkloadSpec& spec, std::uint64_t seed);
[[nodiscard]] Workload make_workload(std::string name, rnn::RnnNetwork net, rnn::Utterance utterance,
                                     std::uint64_t seed = 0);

/// FNV-1a over masks and codes of every output vector.
[[nodiscard]] std::uint64_t output_checksum(std::span<const rnn::CompactVector> outputs) noexcept;

struct RunRecord {
  std::string id;
  sim::AcceleratorConfig config;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  sim::SimStats stats;
  cost::DesignCost cost;
  bool golden_match = false;
  std::uint64_t checksum = 0;
  rnn::PredicationStats predication;  // zero unless the config predicates
};

/// Simulates, checks against the golden model and prices one configuration. Library
/// errors are captured in the record, not thrown.
[[nodiscard]] RunRecord run_one(const Workload& w, const sim::AcceleratorConfig& cfg, const cost::UnitCosts& units);

/// Cartesian product of the spec, validated, sorted by id, duplicates dropped.
[[nodiscard]] std::vector<sim::AcceleratorConfig> expand(const SweepSpec& spec);

struct SweepResult {
  std::vector<RunRecord> rows;  // sorted by (id, seed)
  std::vector<ParetoPoint> points;  // one per successful row, dominated flags for energy
  std::vector<ParetoPoint> energy_front;
  std::vector<ParetoPoint> area_front;
};

/// Runs every configuration for every seed. Configurations run in parallel; the output
/// order does not depend on scheduling. threads <= 0 keeps the OpenMP default.
[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, const cost::UnitCosts& units, int threads = 0);
/// Same over prepared workloads and an explicit configuration list.
[[nodiscard]] SweepResult run_sweep(std::span<const Workload> workloads,
                                    std::span<const sim::AcceleratorConfig> configs, const cost::UnitCosts& units,
                                    int threads = 0);

/// Fronts over successful rows; points are labelled "id" or "id#seed" with several seeds.
[[nodiscard]] std::vector<ParetoPoint> pareto_points(std::span<const RunRecord> rows);

}  // namespace masr::dse
