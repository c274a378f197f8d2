#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "masr/rnn/synthetic.hpp"
#include "masr/sim/config.hpp"

namespace masr::dse {

/// Either a saved model (plus optional utterance) or a synthetic spec. A saved model
/// without an utterance gets a random one from `synthetic`'s timesteps, input density and seed.
struct WorkloadSpec {
  std::optional<std::filesystem::path> model;
  std::optional<std::filesystem::path> utterance;
  rnn::SyntheticSpec synthetic;
};

/// One horizontal x vertical lane grid with its PE split.
struct Topology {
  int h = 1;
  int v = 1;
  int p = 1;
  friend bool operator==(const Topology&, const Topology&) = default;
};

struct SweepSpec {
  std::vector<Topology> topologies;  // defaults to every legal grid
  std::vector<int> queue_depths{1};
  std::vector<int> bank_counts{1};
  std::vector<sim::LoadBalance> balance_modes{sim::LoadBalance::none};
  std::vector<std::uint64_t> seeds{1};
  sim::AcceleratorConfig base;
  WorkloadSpec workload;
};

/// Keys mirror AcceleratorConfig fields; a "design" key starts from a named point.
/// Unknown keys and bad values throw ConfigError naming the key.
[[nodiscard]] sim::AcceleratorConfig config_from_json(const nlohmann::json& j, sim::AcceleratorConfig base = {});
[[nodiscard]] nlohmann::json to_json(const sim::AcceleratorConfig& cfg);

[[nodiscard]] rnn::SyntheticSpec synthetic_from_json(const nlohmann::json& j, rnn::SyntheticSpec base = {});
[[nodiscard]] nlohmann::json to_json(const rnn::SyntheticSpec& s);

/// Relative paths resolve against `base_dir`.
[[nodiscard]] WorkloadSpec workload_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
[[nodiscard]] SweepSpec sweep_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Parses a JSON file. Syntax errors and semantic errors report the line of the problem.
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);
[[nodiscard]] sim::AcceleratorConfig load_config(const std::filesystem::path& path, sim::AcceleratorConfig base = {});
[[nodiscard]] rnn::SyntheticSpec load_synthetic_spec(const std::filesystem::path& path, rnn::SyntheticSpec base = {});
[[nodiscard]] SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Every (h, v, p) with h, v powers of two up to 32 and p a power of two dividing h.
[[nodiscard]] std::vector<Topology> all_topologies();

}  // namespace masr::dse
