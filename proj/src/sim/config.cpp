#include "masr/sim/config.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "masr/common/error.hpp"

namespace masr::sim {

std::string to_string(LoadBalance lb) {
  switch (lb) {
    case LoadBalance::none: return "none";
    case LoadBalance::horizontal: return "horizontal";
    case LoadBalance::vertical: return "vertical";
    case LoadBalance::both: return "both";
  }
  return "none";
}

LoadBalance parse_load_balance(std::string_view s) {
  if (s == "none" || s == "off") return LoadBalance::none;
  if (s == "horizontal" || s == "hlb") return LoadBalance::horizontal;
  if (s == "vertical" || s == "vlb") return LoadBalance::vertical;
  if (s == "both") return LoadBalance::both;
  throw ConfigError("unknown load_balance '" + std::string(s) + "' (none|horizontal|vertical|both)");
}

std::string AcceleratorConfig::id() const {
  std::ostringstream os;
  os << 'h' << (horiz_lanes < 10 ? "0" : "") << horiz_lanes << 'v' << (vert_lanes < 10 ? "0" : "") << vert_lanes
     << 'p' << (horiz_pes < 10 ? "0" : "") << horiz_pes << "-q" << queue_depth << "-b" << act_banks << '-'
     << to_string(load_balance);
  if (predication_theta) os << "-theta" << *predication_theta;
  return os.str();
}

DerivedConfig validate_config(const AcceleratorConfig& cfg) {
  std::vector<std::string> errs;
  auto lane_dim = [&](int v, const char* name) {
    if (v < 1 || v > 32) {
      errs.push_back(std::string(name) + " = " + std::to_string(v) + " must be in [1, 32]");
    } else if (!std::has_single_bit(static_cast<unsigned>(v))) {
      errs.push_back(std::string(name) + " = " + std::to_string(v) + " must be a power of two");
    }
  };
  lane_dim(cfg.horiz_lanes, "horiz_lanes");
  lane_dim(cfg.vert_lanes, "vert_lanes");
  if (cfg.horiz_pes < 1 || (cfg.horiz_lanes >= 1 && cfg.horiz_lanes % cfg.horiz_pes != 0)) {
    errs.push_back("horiz_pes = " + std::to_string(cfg.horiz_pes) + " must divide horiz_lanes = " +
                   std::to_string(cfg.horiz_lanes));
  }
  if (cfg.queue_depth < 1) errs.push_back("queue_depth must be >= 1");
  if (cfg.act_banks < 1) errs.push_back("act_banks must be >= 1");
  if (cfg.weight_word_bits < 2 || cfg.weight_word_bits > 16) errs.push_back("weight_word_bits must be in [2, 16]");
  if (cfg.act_word_bits < cfg.weight_word_bits) errs.push_back("act_word_bits must hold at least one activation");
  if (!(cfg.dup_fraction >= 0.0 && cfg.dup_fraction <= 1.0)) errs.push_back("dup_fraction must be in [0, 1]");
  if (cfg.steal_lookahead < 0) errs.push_back("steal_lookahead must be >= 0");
  if (cfg.predication_theta && !(*cfg.predication_theta <= 0.0)) errs.push_back("predication theta must be <= 0");
  if (!(cfg.dram_bytes_per_cycle > 0.0) || !std::isfinite(cfg.dram_bytes_per_cycle)) {
    errs.push_back("dram_bytes_per_cycle must be positive");
  }
  if (cfg.onchip_act_timesteps < 0) errs.push_back("onchip_act_timesteps must be >= 0");
  if (cfg.fill_cycles < 0) errs.push_back("fill_cycles must be >= 0");
  if (!errs.empty()) {
    std::string msg = "invalid accelerator config:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  DerivedConfig d;
  d.lanes = cfg.total_lanes();
  d.lanes_per_pe = cfg.horiz_lanes / cfg.horiz_pes;
  d.pes = cfg.horiz_pes * cfg.vert_lanes;
  d.regfile_words = 512 / cfg.vert_lanes;
  d.acts_per_word = cfg.act_word_bits / cfg.weight_word_bits;
  d.vvadd_per_cycle = d.acts_per_word * cfg.act_banks;
  return d;
}

namespace {

struct Named {
  const char* name;
  int h, v, p;
};
constexpr Named kTable4[] = {
    {"LANESx32", 16, 2, 2},   {"LANESx64", 32, 2, 2},   {"LANESx128", 32, 4, 2},
    {"LANESx256", 32, 8, 2},  {"LANESx512", 32, 16, 1}, {"LANESx1024", 32, 32, 1},
};

}  // namespace

AcceleratorConfig table4_config(std::string_view name) {
  for (const auto& n : kTable4) {
    if (name == n.name) {
      AcceleratorConfig c;
      c.horiz_lanes = n.h;
      c.vert_lanes = n.v;
      c.horiz_pes = n.p;
      return c;
    }
  }
  throw ConfigError("unknown design point '" + std::string(name) + "'");
}

std::vector<std::string> table4_names() {
  std::vector<std::string> out;
  for (const auto& n : kTable4) out.emplace_back(n.name);
  return out;
}

}  // namespace masr::sim
