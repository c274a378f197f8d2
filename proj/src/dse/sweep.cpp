#include "masr/dse/sweep.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <omp.h>

#include "masr/common/error.hpp"
#include "masr/rnn/model_io.hpp"
#include "masr/rnn/synthetic.hpp"
#include "masr/sim/partition.hpp"
#include "masr/sim/simulator.hpp"

namespace masr::dse {

Workload make_workload(std::string name, rnn::RnnNetwork net, rnn::Utterance utterance, std::uint64_t seed) {
  Workload w;
  w.name = std::move(name);
  w.seed = seed;
  w.net = std::move(net);
  w.utterance = std::move(utterance);
  w.golden = rnn::forward_network(w.net, w.utterance);
  // provision compact activations at the densities the model actually produces
  std::vector<double> in, out;
  for (const auto& a : w.golden.layers) in.push_back(a.input_nz);
  for (std::size_t l = 1; l < in.size(); ++l) out.push_back(in[l]);
  out.push_back(rnn::mean_density(w.golden.outputs));
  w.act_storage_bits = cost::compact_activation_bits(w.net, in, out, kActWindow);
  return w;
}

Workload prepare_workload(const WorkloadSpec& spec, std::uint64_t seed) {
  if (spec.model) {
    rnn::RnnNetwork net = rnn::load_network(*spec.model);
    rnn::Utterance utt = spec.utterance
                             ? rnn::load_utterance(*spec.utterance)
                             : rnn::random_utterance(net.input_dim(), spec.synthetic.timesteps, spec.synthetic.input_nz,
                                                     spec.synthetic.bits, seed);
    return make_workload(spec.model->filename().string(), std::move(net), std::move(utt), seed);
  }
  rnn::SyntheticSpec s = spec.synthetic;
  s.seed = seed;
  rnn::SyntheticModel m = rnn::generate_synthetic(s);
  std::string name = m.net.name;
  return make_workload(std::move(name), std::move(m.net), std::move(m.utterance), seed);
}

std::uint64_t output_checksum(std::span<const rnn::CompactVector> outputs) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& v : outputs) {
    mix(v.dim(), 8);
    for (auto word : v.mask().words()) mix(word, 8);
    for (auto c : v.values()) mix(static_cast<std::uint16_t>(c), 2);
  }
  return h;
}

RunRecord run_one(const Workload& w, const sim::AcceleratorConfig& cfg, const cost::UnitCosts& units) {
  RunRecord r;
  r.config = cfg;
  r.seed = w.seed;
  try {
    r.id = cfg.id();
    (void)sim::validate_config(cfg);
    const sim::LaneAssignment assignment = sim::partition(w.net, cfg);
    sim::SimResult s = sim::simulate_network(w.net, w.utterance, cfg);
    if (cfg.predication_theta) {
      rnn::ForwardOptions o;
      o.parallel = false;
      o.theta = cfg.predication_theta;
      rnn::NetworkResult g = rnn::forward_network(w.net, w.utterance, o);
      r.golden_match = s.outputs == g.outputs;
      r.predication = g.predication;
    } else {
      r.golden_match = s.outputs == w.golden.outputs;
    }
    r.checksum = output_checksum(s.outputs);
    const cost::MasrDesign design = cost::describe_masr(cfg, assignment, w.act_storage_bits, units);
    r.cost = cost::cost_masr(s.stats, design, units, r.id);
    r.stats = std::move(s.stats);
    r.ok = true;
  } catch (const Error& e) {
    r.error = e.what();
  } catch (const std::exception& e) {
    r.error = std::string("unexpected: ") + e.what();
  }
  if (r.id.empty()) r.id = "invalid";
  return r;
}

std::vector<sim::AcceleratorConfig> expand(const SweepSpec& spec) {
  std::vector<sim::AcceleratorConfig> out;
  std::set<std::string> seen;
  std::vector<std::string> errors;
  for (const auto& t : spec.topologies) {
    for (int q : spec.queue_depths) {
      for (int b : spec.bank_counts) {
        for (auto lb : spec.balance_modes) {
          sim::AcceleratorConfig c = spec.base;
          c.horiz_lanes = t.h;
          c.vert_lanes = t.v;
          c.horiz_pes = t.p;
          c.queue_depth = q;
          c.act_banks = b;
          c.load_balance = lb;
          try {
            (void)sim::validate_config(c);
          } catch (const ConfigError& e) {
            errors.push_back(e.what());
            continue;
          }
          if (seen.insert(c.id()).second) out.push_back(c);
        }
      }
    }
  }
  if (!errors.empty()) throw ConfigError("sweep spec generates invalid configurations: " + errors.front());
  if (out.empty()) throw ConfigError("sweep spec is empty");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
  return out;
}

std::vector<ParetoPoint> pareto_points(std::span<const RunRecord> rows) {
  std::set<std::uint64_t> seeds;
  for (const auto& r : rows) seeds.insert(r.seed);
  std::vector<ParetoPoint> pts;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    ParetoPoint p;
    p.id = seeds.size() > 1 ? r.id + "#" + std::to_string(r.seed) : r.id;
    p.cycles = static_cast<double>(r.stats.total_cycles);
    p.energy = r.cost.total_energy();
    p.area = r.cost.total_area();
    pts.push_back(std::move(p));
  }
  return pts;
}

SweepResult run_sweep(std::span<const Workload> workloads, std::span<const sim::AcceleratorConfig> configs,
                      const cost::UnitCosts& units, int threads) {
  SweepResult res;
  const std::size_t n = workloads.size() * configs.size();
  res.rows.resize(n);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (std::size_t k = 0; k < n; ++k) {
    res.rows[k] = run_one(workloads[k / configs.size()], configs[k % configs.size()], units);
  }
  std::sort(res.rows.begin(), res.rows.end(),
            [](const RunRecord& a, const RunRecord& b) { return std::tie(a.id, a.seed) < std::tie(b.id, b.seed); });
  res.points = pareto_points(res.rows);
  mark_front(res.points, Objective::energy);
  res.energy_front = pareto_front(res.points, Objective::energy);
  res.area_front = pareto_front(res.points, Objective::area);
  return res;
}

SweepResult run_sweep(const SweepSpec& spec, const cost::UnitCosts& units, int threads) {
  const auto configs = expand(spec);
  std::vector<Workload> workloads;
  for (auto seed : spec.seeds) workloads.push_back(prepare_workload(spec.workload, seed));
  return run_sweep(workloads, configs, units, threads);
}

}  // namespace masr::dse
