#include "masr/dse/experiments.hpp"

#include <algorithm>

#include "masr/common/error.hpp"
#include "masr/sim/partition.hpp"
#include "masr/sim/simulator.hpp"
#include "masr/sparse/footprint.hpp"

namespace masr::dse {

rnn::SyntheticSpec standard_workload_spec() { return rnn::SyntheticSpec{}; }

sim::AcceleratorConfig experiment_config(const std::string& design) {
  sim::AcceleratorConfig c = sim::table4_config(design);
  c.act_banks = 8;
  c.load_balance = sim::LoadBalance::vertical;
  c.stream_weights = false;
  return c;
}

std::vector<BreakdownPoint> breakdowns(const Workload& w, std::span<const sim::AcceleratorConfig> configs) {
  std::vector<BreakdownPoint> out(configs.size());
  std::vector<std::string> errors(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      sim::SimResult r = sim::simulate_network(w.net, w.utterance, configs[i]);
      BreakdownPoint& p = out[i];
      p.id = configs[i].id();
      p.config = configs[i];
      p.cycles = r.stats.total_cycles;
      p.utilization = r.stats.utilization();
      p.breakdown = sim::cycle_breakdown(r.stats);
      p.golden_match = !configs[i].predication_theta && r.outputs == w.golden.outputs;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw IntegrityError("experiment run failed: " + e);
  }
  return out;
}

std::vector<BreakdownPoint> bank_experiment(const Workload& w, sim::AcceleratorConfig base, std::span<const int> banks) {
  std::vector<sim::AcceleratorConfig> cs;
  for (int b : banks) {
    base.act_banks = b;
    cs.push_back(base);
  }
  return breakdowns(w, cs);
}

std::vector<BreakdownPoint> queue_experiment(const Workload& w, sim::AcceleratorConfig base,
                                             std::span<const int> depths) {
  std::vector<sim::AcceleratorConfig> cs;
  for (int q : depths) {
    base.queue_depth = q;
    cs.push_back(base);
  }
  return breakdowns(w, cs);
}

std::vector<BreakdownPoint> balance_experiment(const Workload& w, std::span<const std::string> designs,
                                               std::span<const sim::LoadBalance> modes) {
  std::vector<sim::AcceleratorConfig> cs;
  for (const auto& d : designs) {
    for (auto m : modes) {
      sim::AcceleratorConfig c = experiment_config(d);
      c.load_balance = m;
      cs.push_back(c);
    }
  }
  return breakdowns(w, cs);
}

std::vector<ScalingPoint> sparsity_scaling(std::span<const std::size_t> hiddens, std::span<const double> nzs,
                                           const sim::AcceleratorConfig& cfg, const ScalingOptions& opts) {
  auto model = [&](std::size_t hidden, double nz) {
    rnn::SyntheticSpec s;
    s.hidden = hidden;
    s.layers = 1;
    s.timesteps = opts.timesteps;
    s.weight_nz = s.act_nz = s.input_nz = nz;
    s.direction = rnn::Direction::unidirectional;
    s.recurrent_mean = opts.recurrent_mean;
    s.recurrent_gain = opts.recurrent_gain;
    s.seed = opts.seed;
    return rnn::generate_synthetic(s);
  };
  auto run = [&](const rnn::SyntheticModel& m, bool& match) {
    sim::SimResult r = sim::simulate_network(m.net, m.utterance, cfg);
    match = r.outputs == rnn::forward_network(m.net, m.utterance).outputs;
    return r.stats.total_cycles;
  };
  std::vector<ScalingPoint> out;
  for (std::size_t h : hiddens) {
    bool dense_match = false;
    const std::uint64_t dense = run(model(h, 1.0), dense_match);
    for (double nz : nzs) {
      ScalingPoint p;
      p.hidden = h;
      p.nz = nz;
      p.dense_cycles = dense;
      if (nz == 1.0) {
        p.sparse_cycles = dense;
        p.hidden_nz = 1.0;
        p.golden_match = dense_match;
      } else {
        const rnn::SyntheticModel m = model(h, nz);
        p.hidden_nz = m.hidden_nz.front();
        p.sparse_cycles = run(m, p.golden_match);
      }
      p.speedup = static_cast<double>(p.dense_cycles) / static_cast<double>(std::max<std::uint64_t>(1, p.sparse_cycles));
      out.push_back(p);
    }
  }
  return out;
}

std::vector<PredicationPoint> predication_experiment(const Workload& w, sim::AcceleratorConfig cfg,
                                                     std::span<const double> thetas) {
  cfg.predication_theta.reset();
  const std::uint64_t base = sim::simulate_network(w.net, w.utterance, cfg).stats.total_cycles;
  std::vector<PredicationPoint> out(thetas.size());
  std::vector<std::string> errors(thetas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    try {
      sim::AcceleratorConfig c = cfg;
      c.predication_theta = thetas[i];
      rnn::ForwardOptions o;
      o.parallel = false;
      o.theta = thetas[i];
      const rnn::NetworkResult g = rnn::forward_network(w.net, w.utterance, o);
      const sim::SimResult r = sim::simulate_network(w.net, w.utterance, c);
      PredicationPoint& p = out[i];
      p.theta = thetas[i];
      p.skip_fraction = g.predication.skip_fraction();
      p.mismatch_rate = g.predication.mismatch_rate();
      p.cycles = r.stats.total_cycles;
      p.base_cycles = base;
      p.reduction = 1.0 - static_cast<double>(p.cycles) / static_cast<double>(base);
      p.golden_match = r.outputs == g.outputs;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw IntegrityError("predication run failed: " + e);
  }
  return out;
}

const PredicationPoint* best_predication(std::span<const PredicationPoint> points, double max_mismatch) {
  const PredicationPoint* best = nullptr;
  for (const auto& p : points) {
    if (p.mismatch_rate <= max_mismatch && (best == nullptr || p.reduction > best->reduction)) best = &p;
  }
  return best;
}

std::vector<DoubleBufferPoint> double_buffer_experiment(const rnn::RnnNetwork& net, sim::AcceleratorConfig cfg,
                                                        std::span<const std::size_t> timesteps, double input_nz,
                                                        std::uint64_t seed) {
  if (net.layers.empty()) throw ParameterError("network has no layers");
  rnn::RnnNetwork one;
  one.name = net.name + "-layer0";
  one.direction = net.direction;
  one.layers.push_back(net.layers.front());
  cfg.stream_weights = true;
  const auto& layer = one.layers.front();
  const std::uint64_t transfer =
      sim::transfer_cycles(sim::pass_weight_bytes(layer.wx, layer.wh), cfg.dram_bytes_per_cycle);

  std::vector<DoubleBufferPoint> out(timesteps.size());
  std::vector<std::string> errors(timesteps.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < timesteps.size(); ++i) {
    try {
      const rnn::Utterance u = rnn::random_utterance(one.input_dim(), timesteps[i], input_nz, layer.act.bits, seed);
      const sim::SimResult r = sim::simulate_network(one, u, cfg);
      DoubleBufferPoint& p = out[i];
      p.timesteps = timesteps[i];
      p.transfer_cycles = transfer;
      p.compute_cycles = r.pass_cycles.front();
      p.ratio = static_cast<double>(transfer) / static_cast<double>(std::max<std::uint64_t>(1, p.compute_cycles));
      p.exposed_cycles = r.stats.exposed_dram_cycles();
      p.dram_bytes = r.stats.dram_bytes;
      p.golden_match = r.outputs == rnn::forward_network(one, u, {.parallel = false, .theta = {}}).outputs;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw IntegrityError("double-buffer run failed: " + e);
  }
  return out;
}

std::vector<CostPoint> design_costs(const Workload& w, std::span<const std::string> designs,
                                    const cost::UnitCosts& units) {
  std::vector<sim::AcceleratorConfig> cs;
  for (const auto& d : designs) cs.push_back(experiment_config(d));
  std::vector<CostPoint> out(cs.size());
  std::vector<std::string> errors(cs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < cs.size(); ++i) {
    RunRecord r = run_one(w, cs[i], units);
    if (!r.ok) {
      errors[i] = r.error;
      continue;
    }
    out[i].design = designs[i];
    r.cost.name = designs[i];
    out[i].cost = std::move(r.cost);
    out[i].stats = std::move(r.stats);
    out[i].golden_match = r.golden_match;
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw IntegrityError("cost run failed: " + e);
  }
  return out;
}

std::vector<cost::BaselineResult> baseline_costs(const Workload& w, std::span<const int> pes,
                                                 const cost::UnitCosts& units) {
  const auto traces = cost::trace_network(w.net, w.utterance);
  std::vector<cost::BaselineResult> out(pes.size() * 2);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto kind = i % 2 == 0 ? cost::BaselineKind::eie : cost::BaselineKind::ese;
    out[i] = cost::cost_csr_baseline(w.net, traces, pes[i / 2], kind, units, kActWindow);
  }
  return out;
}

std::vector<EncodingPoint> encoding_experiment(const rnn::CompactMatrix& m, std::span<const std::size_t> partitions) {
  std::vector<EncodingPoint> out;
  for (std::size_t p : partitions) {
    for (auto f : {sparse::Format::bitmask, sparse::Format::csr, sparse::Format::runlength}) {
      const sparse::EncodingFootprint fp = sparse::metadata_footprint(f, m, p);
      EncodingPoint e;
      e.partitions = p;
      e.format = std::string(sparse::to_string(f));
      e.value_bits = fp.value_bits;
      e.mask_bits = fp.mask_bits;
      e.row_offset_bits = fp.row_offset_bits;
      e.column_index_bits = fp.column_index_bits;
      e.metadata_bits = fp.metadata_bits();
      e.total_bits = fp.total_bits;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace masr::dse
