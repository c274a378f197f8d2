#include "masr/dse/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "masr/common/error.hpp"

namespace masr::dse {

namespace {

using nlohmann::json;

template <class T>
T get(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + key + "': expected " + (std::is_same_v<T, std::string> ? "a string" : "a number") +
                      ", got " + j.dump());
  }
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("key '" + key + "': expected true or false, got " + j.dump());
  return j.get<bool>();
}

template <class T>
std::vector<T> get_list(const json& j, const std::string& key) {
  if (!j.is_array()) return {get<T>(j, key)};
  std::vector<T> out;
  for (const auto& e : j) out.push_back(get<T>(e, key));
  if (out.empty()) throw ConfigError("key '" + key + "': list is empty");
  return out;
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

// 1-based line of the first occurrence of "key" in the text, or 0.
std::size_t line_of_key(const std::string& text, const std::string& message) {
  const auto q1 = message.find('\'');
  if (q1 == std::string::npos) return 0;
  const auto q2 = message.find('\'', q1 + 1);
  if (q2 == std::string::npos) return 0;
  const std::string needle = "\"" + message.substr(q1 + 1, q2 - q1 - 1) + "\"";
  const auto at = text.find(needle);
  if (at == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

template <class F>
auto with_line_context(const std::filesystem::path& path, F&& parse) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": syntax error: " + e.what());
  }
  try {
    return parse(j);
  } catch (const ConfigError& e) {
    const std::size_t line = line_of_key(text, e.what());
    throw ConfigError(path.string() + (line ? ":" + std::to_string(line) : std::string()) + ": " + e.what());
  }
}

}  // namespace

sim::AcceleratorConfig config_from_json(const json& j, sim::AcceleratorConfig c) {
  require_object(j, "accelerator config");
  if (j.contains("design")) c = sim::table4_config(get<std::string>(j.at("design"), "design"));
  for (const auto& [key, v] : j.items()) {
    if (key == "design") continue;
    if (key == "horiz_lanes") c.horiz_lanes = get<int>(v, key);
    else if (key == "vert_lanes") c.vert_lanes = get<int>(v, key);
    else if (key == "horiz_pes") c.horiz_pes = get<int>(v, key);
    else if (key == "queue_depth") c.queue_depth = get<int>(v, key);
    else if (key == "act_banks") c.act_banks = get<int>(v, key);
    else if (key == "act_word_bits") c.act_word_bits = get<int>(v, key);
    else if (key == "weight_word_bits") c.weight_word_bits = get<int>(v, key);
    else if (key == "load_balance") c.load_balance = sim::parse_load_balance(get<std::string>(v, key));
    else if (key == "dup_fraction") c.dup_fraction = get<double>(v, key);
    else if (key == "steal_lookahead") c.steal_lookahead = get<int>(v, key);
    else if (key == "steal_both_ways") c.steal_both_ways = get_bool(v, key);
    else if (key == "predication_theta") {
      if (v.is_null()) c.predication_theta.reset();
      else c.predication_theta = get<double>(v, key);
    } else if (key == "dram_bytes_per_cycle") c.dram_bytes_per_cycle = get<double>(v, key);
    else if (key == "onchip_act_timesteps") c.onchip_act_timesteps = get<int>(v, key);
    else if (key == "stream_weights") c.stream_weights = get_bool(v, key);
    else if (key == "fill_cycles") c.fill_cycles = get<int>(v, key);
    else if (key == "capacities") {
      require_object(v, "capacities");
      for (const auto& [k2, v2] : v.items()) {
        if (k2 == "weight_bytes_per_lane") c.capacities.weight_bytes_per_lane = get<std::uint64_t>(v2, k2);
        else if (k2 == "mask_bytes_per_lane") c.capacities.mask_bytes_per_lane = get<std::uint64_t>(v2, k2);
        else if (k2 == "act_bytes") c.capacities.act_bytes = get<std::uint64_t>(v2, k2);
        else throw ConfigError("unknown key '" + k2 + "' in capacities");
      }
    } else throw ConfigError("unknown key '" + key + "' in accelerator config");
  }
  return c;
}

json to_json(const sim::AcceleratorConfig& c) {
  json j{{"horiz_lanes", c.horiz_lanes},
         {"vert_lanes", c.vert_lanes},
         {"horiz_pes", c.horiz_pes},
         {"queue_depth", c.queue_depth},
         {"act_banks", c.act_banks},
         {"act_word_bits", c.act_word_bits},
         {"weight_word_bits", c.weight_word_bits},
         {"load_balance", sim::to_string(c.load_balance)},
         {"dup_fraction", c.dup_fraction},
         {"steal_lookahead", c.steal_lookahead},
         {"steal_both_ways", c.steal_both_ways},
         {"predication_theta", c.predication_theta ? json(*c.predication_theta) : json(nullptr)},
         {"dram_bytes_per_cycle", c.dram_bytes_per_cycle},
         {"onchip_act_timesteps", c.onchip_act_timesteps},
         {"stream_weights", c.stream_weights},
         {"fill_cycles", c.fill_cycles},
         {"capacities",
          {{"weight_bytes_per_lane", c.capacities.weight_bytes_per_lane},
           {"mask_bytes_per_lane", c.capacities.mask_bytes_per_lane},
           {"act_bytes", c.capacities.act_bytes}}}};
  return j;
}

rnn::SyntheticSpec synthetic_from_json(const json& j, rnn::SyntheticSpec s) {
  require_object(j, "synthetic spec");
  for (const auto& [key, v] : j.items()) {
    if (key == "hidden") s.hidden = get<std::size_t>(v, key);
    else if (key == "layers") s.layers = get<std::size_t>(v, key);
    else if (key == "input_dim") s.input_dim = get<std::size_t>(v, key);
    else if (key == "timesteps") s.timesteps = get<std::size_t>(v, key);
    else if (key == "weight_nz") s.weight_nz = get<double>(v, key);
    else if (key == "act_nz") s.act_nz = get<double>(v, key);
    else if (key == "input_nz") s.input_nz = get<double>(v, key);
    else if (key == "bidirectional") {
      s.direction = get_bool(v, key) ? rnn::Direction::bidirectional : rnn::Direction::unidirectional;
    } else if (key == "bits") s.bits = get<int>(v, key);
    else if (key == "seed") s.seed = get<std::uint64_t>(v, key);
    else if (key == "recurrent_mean") s.recurrent_mean = get<double>(v, key);
    else if (key == "recurrent_gain") s.recurrent_gain = get<double>(v, key);
    else if (key == "bias_jitter") s.bias_jitter = get<double>(v, key);
    else if (key == "calibration_tolerance") s.calibration_tolerance = get<double>(v, key);
    else throw ConfigError("unknown key '" + key + "' in synthetic spec");
  }
  return s;
}

json to_json(const rnn::SyntheticSpec& s) {
  return json{{"hidden", s.hidden},
              {"layers", s.layers},
              {"input_dim", s.input_dim},
              {"timesteps", s.timesteps},
              {"weight_nz", s.weight_nz},
              {"act_nz", s.act_nz},
              {"input_nz", s.input_nz},
              {"bidirectional", s.direction == rnn::Direction::bidirectional},
              {"bits", s.bits},
              {"seed", s.seed},
              {"recurrent_mean", s.recurrent_mean},
              {"recurrent_gain", s.recurrent_gain},
              {"bias_jitter", s.bias_jitter},
              {"calibration_tolerance", s.calibration_tolerance}};
}

WorkloadSpec workload_from_json(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "workload");
  WorkloadSpec w;
  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() || base_dir.empty() ? p : base_dir / p; };
  for (const auto& [key, v] : j.items()) {
    if (key == "model") w.model = resolve(get<std::string>(v, key));
    else if (key == "utterance") w.utterance = resolve(get<std::string>(v, key));
    else if (key == "synthetic") w.synthetic = synthetic_from_json(v);
    else throw ConfigError("unknown key '" + key + "' in workload");
  }
  if (w.utterance && !w.model) throw ConfigError("key 'utterance' needs a 'model' next to it");
  return w;
}

std::vector<Topology> all_topologies() {
  std::vector<Topology> out;
  for (int h = 1; h <= 32; h *= 2) {
    for (int v = 1; v <= 32; v *= 2) {
      for (int p = 1; p <= h; p *= 2) out.push_back({h, v, p});
    }
  }
  return out;
}

SweepSpec sweep_from_json(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "sweep spec");
  SweepSpec s;
  s.topologies = all_topologies();
  std::optional<std::vector<int>> lane_filter;
  for (const auto& [key, v] : j.items()) {
    if (key == "topologies") {
      if (v.is_string()) {
        if (get<std::string>(v, key) != "all") throw ConfigError("key 'topologies': expected \"all\" or a list");
        continue;
      }
      if (!v.is_array() || v.empty()) throw ConfigError("key 'topologies': expected a non-empty list of [h, v, p]");
      s.topologies.clear();
      for (const auto& t : v) {
        if (!t.is_array() || t.size() != 3) throw ConfigError("key 'topologies': each entry is [h, v, p]");
        s.topologies.push_back({get<int>(t[0], key), get<int>(t[1], key), get<int>(t[2], key)});
      }
    } else if (key == "designs") {
      s.topologies.clear();
      for (const auto& name : get_list<std::string>(v, key)) {
        const auto c = sim::table4_config(name);
        s.topologies.push_back({c.horiz_lanes, c.vert_lanes, c.horiz_pes});
      }
    } else if (key == "lanes") lane_filter = get_list<int>(v, key);
    else if (key == "queue_depths") s.queue_depths = get_list<int>(v, key);
    else if (key == "bank_counts") s.bank_counts = get_list<int>(v, key);
    else if (key == "balance_modes") {
      s.balance_modes.clear();
      for (const auto& m : get_list<std::string>(v, key)) s.balance_modes.push_back(sim::parse_load_balance(m));
    } else if (key == "seeds") s.seeds = get_list<std::uint64_t>(v, key);
    else if (key == "base") s.base = config_from_json(v);
    else if (key == "workload") s.workload = workload_from_json(v, base_dir);
    else throw ConfigError("unknown key '" + key + "' in sweep spec");
  }
  if (lane_filter) {
    std::erase_if(s.topologies, [&](const Topology& t) {
      return std::find(lane_filter->begin(), lane_filter->end(), t.h * t.v) == lane_filter->end();
    });
  }
  if (s.topologies.empty()) throw ConfigError("key 'topologies': no topology left to sweep");
  return s;
}

json read_json_file(const std::filesystem::path& path) {
  return with_line_context(path, [](const json& j) { return j; });
}

sim::AcceleratorConfig load_config(const std::filesystem::path& path, sim::AcceleratorConfig base) {
  return with_line_context(path, [&](const json& j) { return config_from_json(j, base); });
}

rnn::SyntheticSpec load_synthetic_spec(const std::filesystem::path& path, rnn::SyntheticSpec base) {
  return with_line_context(path, [&](const json& j) { return synthetic_from_json(j, base); });
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return with_line_context(path, [&](const json& j) { return sweep_from_json(j, path.parent_path()); });
}

}  // namespace masr::dse
