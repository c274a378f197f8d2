#include "masr/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "masr/common/error.hpp"
#include "masr/rnn/kernels.hpp"

namespace masr::sim {

Simulator::Simulator(const AcceleratorConfig& cfg) : cfg_(cfg), derived_(validate_config(cfg)), engine_(cfg) {}

const TileMap& Simulator::tiles(std::size_t rows, std::size_t cols) {
  auto key = std::make_pair(rows, cols);
  auto it = tile_cache_.find(key);
  if (it == tile_cache_.end()) it = tile_cache_.emplace(key, tile_matrix(rows, cols, cfg_)).first;
  return it->second;
}

TimestepResult Simulator::timestep(const rnn::RnnLayer& layer, bool backward, const rnn::CompactVector& x,
                                   const QuantParams& input_quant, const rnn::CompactVector& h_prev,
                                   SimStats& stats) {
  const rnn::CompactMatrix& wi = backward ? layer.vx : layer.wx;
  const rnn::CompactMatrix& wh = backward ? layer.vh : layer.wh;
  const std::vector<double>& bias = backward ? layer.b_bwd : layer.b_fwd;
  const std::size_t n = wh.cols();
  if (x.dim() != wi.rows()) throw DimensionError("input length differs from layer input size");
  if (h_prev.dim() != n) throw DimensionError("hidden state length differs from layer size");
  if (stats.lanes.size() != static_cast<std::size_t>(derived_.lanes)) {
    stats.lanes.resize(static_cast<std::size_t>(derived_.lanes));
  }

  TimestepResult res;
  hid_.assign(n, {});
  inp_.assign(n, {});
  res.cycles += engine_.run_matvec(tiles(wh.rows(), n), wh, h_prev, {}, hid_, stats);

  std::vector<double> hid_real(n);
  for (std::size_t j = 0; j < n; ++j) hid_real[j] = rnn::to_real(hid_[j], wh.quant(), layer.act);
  std::span<const char> active;
  if (cfg_.predication_theta) {
    active_.assign(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (hid_real[j] < *cfg_.predication_theta) {
        active_[j] = 0;
        ++stats.predicated_columns;
      }
    }
    active = active_;
  }
  res.cycles += engine_.run_matvec(tiles(wi.rows(), n), wi, x, active, inp_, stats);

  std::vector<rnn::Code> codes(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!active.empty() && active[j] == 0) continue;
    codes[j] = rnn::activate(bias[j], rnn::to_real(inp_[j], wi.quant(), input_quant), hid_real[j], layer.act);
  }
  res.state = sparse::encode_vector(codes);

  const auto per_cycle = static_cast<std::size_t>(derived_.vvadd_per_cycle);
  const std::uint64_t vv = (n + per_cycle - 1) / per_cycle;
  for (auto& lc : stats.lanes) lc.idle += vv;
  stats.vvadd_cycles += vv;
  stats.vvadd_ops += n;
  stats.bias_reads += n;
  stats.act_write_bits += res.state.nnz() * static_cast<std::uint64_t>(layer.act.bits) + n;
  res.cycles += vv;
  stats.total_cycles += res.cycles;
  return res;
}

TimestepResult simulate_timestep(const rnn::RnnLayer& layer, bool backward, const rnn::CompactVector& x,
                                 const QuantParams& input_quant, const rnn::CompactVector& h_prev,
                                 const AcceleratorConfig& cfg, SimStats& stats) {
  Simulator sim(cfg);
  return sim.timestep(layer, backward, x, input_quant, h_prev, stats);
}

std::uint64_t pass_weight_bytes(const rnn::CompactMatrix& input, const rnn::CompactMatrix& hidden) {
  std::uint64_t bits = 0;
  for (const auto* m : {&input, &hidden}) {
    bits += m->nnz() * static_cast<std::uint64_t>(m->quant().bits);
    bits += static_cast<std::uint64_t>(m->rows()) * m->cols();
  }
  return (bits + 7) / 8;
}

std::uint64_t transfer_cycles(std::uint64_t bytes, double bytes_per_cycle) noexcept {
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(bytes) / bytes_per_cycle - 1e-9));
}

namespace {

void idle_lanes(SimStats& stats, std::uint64_t cycles) {
  for (auto& lc : stats.lanes) lc.idle += cycles;
  stats.total_cycles += cycles;
}

std::uint64_t activation_bytes(const rnn::CompactVector& x, int bits) {
  return (x.nnz() * static_cast<std::uint64_t>(bits) + x.dim() + 7) / 8;
}

}  // namespace

SimResult simulate_network(const rnn::RnnNetwork& net, const rnn::Utterance& utterance,
                           const AcceleratorConfig& cfg) {
  net.validate();
  if (utterance.timesteps() > 0 && utterance.dim() != net.input_dim()) {
    throw DimensionError("utterance has " + std::to_string(utterance.dim()) + " features, network expects " +
                         std::to_string(net.input_dim()));
  }
  (void)partition(net, cfg);
  Simulator sim(cfg);
  SimResult res;
  SimStats& stats = res.stats;
  stats.lanes.resize(static_cast<std::size_t>(sim.derived().lanes));

  const bool bidir = net.direction == rnn::Direction::bidirectional;
  struct Pass {
    std::size_t layer;
    bool backward;
  };
  std::vector<Pass> passes;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    passes.push_back({l, false});
    if (bidir) passes.push_back({l, true});
  }
  auto weight_bytes = [&](const Pass& p) {
    const auto& layer = net.layers[p.layer];
    return p.backward ? pass_weight_bytes(layer.vx, layer.vh) : pass_weight_bytes(layer.wx, layer.wh);
  };
  // traffic is counted either way; stream_weights only decides whether it costs time
  if (!passes.empty()) {
    const std::uint64_t b = weight_bytes(passes.front());
    stats.preload_cycles = transfer_cycles(b, cfg.dram_bytes_per_cycle);
    stats.dram_bytes += b;
  }

  std::vector<rnn::CompactVector> inputs = utterance.inputs;
  QuantParams input_quant = utterance.quant;
  const std::size_t T = inputs.size();
  std::vector<rnn::CompactVector> fwd_states, bwd_states;

  for (std::size_t pi = 0; pi < passes.size(); ++pi) {
    const Pass& p = passes[pi];
    const auto& layer = net.layers[p.layer];
    auto& states = p.backward ? bwd_states : fwd_states;
    states.assign(T, rnn::CompactVector(layer.hidden()));
    rnn::CompactVector h(layer.hidden());
    std::uint64_t pass_cycles = 0;
    for (std::size_t k = 0; k < T; ++k) {
      const std::size_t t = p.backward ? T - 1 - k : k;
      TimestepResult r = sim.timestep(layer, p.backward, inputs[t], input_quant, h, stats);
      pass_cycles += r.cycles;
      res.evaluated_neurons += layer.hidden();
      // inputs past the on-chip window stream in while the previous timestep computes
      if (t >= static_cast<std::size_t>(cfg.onchip_act_timesteps)) {
        const std::uint64_t bytes = activation_bytes(inputs[t], input_quant.bits);
        const std::uint64_t load = transfer_cycles(bytes, cfg.dram_bytes_per_cycle);
        stats.dram_bytes += bytes;
        stats.act_load_cycles += load;
        const std::uint64_t exposed = cfg.stream_weights && load > r.cycles ? load - r.cycles : 0;
        stats.act_exposed_cycles += exposed;
        idle_lanes(stats, exposed);
      }
      h = std::move(r.state);
      states[t] = h;
    }
    res.pass_cycles.push_back(pass_cycles);

    if (pi + 1 < passes.size()) {
      const std::uint64_t b = weight_bytes(passes[pi + 1]);
      const std::uint64_t load = transfer_cycles(b, cfg.dram_bytes_per_cycle);
      stats.dram_bytes += b;
      stats.weight_load_cycles += load;
      const std::uint64_t exposed = cfg.stream_weights && load > pass_cycles ? load - pass_cycles : 0;
      stats.weight_exposed_cycles += exposed;
      idle_lanes(stats, exposed);
    }

    const bool layer_done = !bidir || p.backward;
    if (layer_done) {
      std::vector<rnn::CompactVector> outputs;
      outputs.reserve(T);
      for (std::size_t t = 0; t < T; ++t) {
        outputs.push_back(bidir ? rnn::merge_directions(fwd_states[t], bwd_states[t], layer.act.max_code())
                                : fwd_states[t]);
      }
      inputs = std::move(outputs);
      input_quant = rnn::output_quant(layer);
    }
  }
  res.predicated_neurons = stats.predicated_columns;
  res.outputs = std::move(inputs);
  res.output_quant = input_quant;
  stats.check_accounting();
  return res;
}

}  // namespace masr::sim
