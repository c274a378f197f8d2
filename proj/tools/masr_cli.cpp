#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "masr/common/error.hpp"
#include "masr/cost/baseline.hpp"
#include "masr/cost/cost_model.hpp"
#include "masr/cost/unit_costs.hpp"
#include "masr/dse/config_io.hpp"
#include "masr/dse/experiments.hpp"
#include "masr/dse/report.hpp"
#include "masr/dse/sweep.hpp"
#include "masr/dse/table.hpp"
#include "masr/rnn/model_io.hpp"
#include "masr/sim/config.hpp"
#include "masr/sim/partition.hpp"

namespace fs = std::filesystem;
using namespace masr;

namespace {

enum Exit : int { ok = 0, failure = 1, config_error = 2, io_error = 3, integrity_error = 4 };

struct ConfigFlags {
  std::string file;
  std::string design;
  std::optional<int> h, v, p, queue, banks, lookahead, fill;
  std::optional<std::string> balance;
  std::optional<double> dup, theta, bandwidth;
  std::optional<bool> stream;

  void add(CLI::App* app) {
    app->add_option("-c,--config", file, "accelerator config file (JSON); flags override it");
    app->add_option("--design", design, "start from a named design point, e.g. LANESx256");
    app->add_option("--horiz-lanes", h);
    app->add_option("--vert-lanes", v);
    app->add_option("--horiz-pes", p);
    app->add_option("--queue-depth", queue);
    app->add_option("--banks", banks, "activation SRAM banks");
    app->add_option("--load-balance", balance, "none|horizontal|vertical|both");
    app->add_option("--dup-fraction", dup, "share of each tile duplicated for balancing");
    app->add_option("--steal-lookahead", lookahead);
    app->add_option("--theta", theta, "output predication threshold (<= 0)");
    app->add_option("--dram-bytes-per-cycle", bandwidth);
    app->add_option("--fill-cycles", fill);
    app->add_flag("--stream-weights,!--no-stream-weights", stream, "charge DRAM stalls compute cannot hide");
  }

  sim::AcceleratorConfig resolve(sim::AcceleratorConfig c = {}) const {
    if (!design.empty()) c = sim::table4_config(design);
    if (!file.empty()) c = dse::load_config(file, c);
    if (h) c.horiz_lanes = *h;
    if (v) c.vert_lanes = *v;
    if (p) c.horiz_pes = *p;
    if (queue) c.queue_depth = *queue;
    if (banks) c.act_banks = *banks;
    if (balance) c.load_balance = sim::parse_load_balance(*balance);
    if (dup) c.dup_fraction = *dup;
    if (lookahead) c.steal_lookahead = *lookahead;
    if (theta) c.predication_theta = *theta;
    if (bandwidth) c.dram_bytes_per_cycle = *bandwidth;
    if (fill) c.fill_cycles = *fill;
    if (stream) c.stream_weights = *stream;
    (void)sim::validate_config(c);
    return c;
  }
};

struct WorkloadFlags {
  std::string model, utterance, synthetic;
  std::optional<std::size_t> hidden, layers, timesteps, input_dim;
  std::optional<double> weight_nz, act_nz, input_nz;
  bool unidirectional = false;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("-m,--model", model, "model file; default is the synthetic standard workload");
    app->add_option("-u,--utterance", utterance, "utterance file for --model");
    app->add_option("--synthetic", synthetic, "synthetic spec file (JSON)");
    app->add_option("--hidden", hidden);
    app->add_option("--layers", layers);
    app->add_option("--input-dim", input_dim);
    app->add_option("--timesteps", timesteps);
    app->add_option("--weight-nz", weight_nz);
    app->add_option("--act-nz", act_nz);
    app->add_option("--input-nz", input_nz);
    app->add_flag("--unidirectional", unidirectional);
    app->add_option("--seed", seed, "seed for generated models and utterances");
  }

  dse::WorkloadSpec resolve() const {
    dse::WorkloadSpec w;
    if (!synthetic.empty()) w.synthetic = dse::load_synthetic_spec(synthetic);
    if (!model.empty()) w.model = model;
    if (!utterance.empty()) {
      if (model.empty()) throw ConfigError("--utterance needs --model");
      w.utterance = utterance;
    }
    auto& s = w.synthetic;
    if (hidden) s.hidden = *hidden;
    if (layers) s.layers = *layers;
    if (input_dim) s.input_dim = *input_dim;
    if (timesteps) s.timesteps = *timesteps;
    if (weight_nz) s.weight_nz = *weight_nz;
    if (act_nz) s.act_nz = *act_nz;
    if (input_nz) s.input_nz = *input_nz;
    if (unidirectional) s.direction = rnn::Direction::unidirectional;
    return w;
  }
};

struct OutputFlags {
  std::string dir = "masr-out";
  std::vector<std::string> formats{"csv"};

  void add(CLI::App* app) {
    app->add_option("-o,--out", dir, "output directory");
    app->add_option("--format", formats, "csv, json or both")->delimiter(',');
  }

  void emit(const dse::Table& t) const {
    for (const auto& f : formats) std::cout << dse::write_table(t, dir, dse::parse_report_format(f)).string() << '\n';
  }
};

cost::UnitCosts load_units(const std::string& path) {
  return path.empty() ? cost::UnitCosts::defaults() : cost::load_unit_costs(path);
}

void apply_thread_override() {
  const char* env = std::getenv("MASR_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) throw ConfigError("MASR_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

rnn::CompactMatrix random_matrix(std::size_t rows, std::size_t cols, double nz, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution keep(nz);
  std::uniform_int_distribution<int> mag(1, 511);
  sparse::DenseCodes d(rows, cols);
  for (auto& c : d.data) {
    if (keep(gen)) c = static_cast<sparse::Code>(gen() & 1 ? mag(gen) : -mag(gen));
  }
  return rnn::CompactMatrix::encode(d);
}

int cmd_run(const ConfigFlags& cf, const WorkloadFlags& wf, const OutputFlags& of, const std::string& units_path,
            const std::string& save_model, const std::string& save_utt) {
  const sim::AcceleratorConfig cfg = cf.resolve();
  const cost::UnitCosts units = load_units(units_path);
  const dse::Workload w = dse::prepare_workload(wf.resolve(), wf.seed);
  auto make_parent = [](const std::string& file) {
    std::error_code ec;
    const fs::path parent = fs::path(file).parent_path();
    if (!parent.empty()) fs::create_directories(parent, ec);
  };
  if (!save_model.empty()) {
    make_parent(save_model);
    rnn::save_network(w.net, save_model);
  }
  if (!save_utt.empty()) {
    make_parent(save_utt);
    rnn::save_utterance(w.utterance, save_utt);
  }
  (void)sim::partition(w.net, cfg);  // capacity problems surface as config errors
  const dse::RunRecord r = dse::run_one(w, cfg, units);
  if (!r.ok) throw IntegrityError(r.error);
  std::error_code ec;
  fs::create_directories(of.dir, ec);
  if (ec) throw IoError("cannot create " + of.dir + ": " + ec.message());
  const fs::path path = fs::path(of.dir) / "run.json";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  os << dse::run_report(w, r, units).dump(2) << '\n';
  if (!os) throw IoError("write failed for " + path.string());
  std::cout << path.string() << '\n';
  of.emit(dse::runs_table(std::span(&r, 1)));
  std::printf("%s cycles=%llu utilization=%.4f energy=%.6g area=%.6g golden_match=%s\n", r.id.c_str(),
              static_cast<unsigned long long>(r.stats.total_cycles), r.stats.utilization(), r.cost.total_energy(),
              r.cost.total_area(), r.golden_match ? "true" : "false");
  return r.golden_match ? ok : integrity_error;
}

int cmd_sweep(const std::string& spec_path, const ConfigFlags& cf, const WorkloadFlags& wf, const OutputFlags& of,
              const std::string& units_path, const std::vector<int>& lanes, const std::vector<int>& queues,
              const std::vector<int>& banks, const std::vector<std::string>& modes,
              const std::vector<std::string>& designs, const std::vector<std::uint64_t>& seeds, int threads) {
  dse::SweepSpec spec;
  if (!spec_path.empty()) {
    spec = dse::load_sweep_spec(spec_path);
  } else {
    spec.topologies = dse::all_topologies();
    spec.workload = wf.resolve();
    spec.seeds = {wf.seed};
  }
  spec.base = cf.resolve(spec.base);
  if (!designs.empty()) {
    spec.topologies.clear();
    for (const auto& d : designs) {
      const auto c = sim::table4_config(d);
      spec.topologies.push_back({c.horiz_lanes, c.vert_lanes, c.horiz_pes});
    }
  }
  if (!lanes.empty()) {
    std::erase_if(spec.topologies, [&](const dse::Topology& t) {
      return std::find(lanes.begin(), lanes.end(), t.h * t.v) == lanes.end();
    });
    if (spec.topologies.empty()) throw ConfigError("--lanes leaves no topology to sweep");
  }
  if (!queues.empty()) spec.queue_depths = queues;
  if (!banks.empty()) spec.bank_counts = banks;
  if (!modes.empty()) {
    spec.balance_modes.clear();
    for (const auto& m : modes) spec.balance_modes.push_back(sim::parse_load_balance(m));
  }
  if (!seeds.empty()) spec.seeds = seeds;

  const dse::SweepResult r = dse::run_sweep(spec, load_units(units_path), threads);
  of.emit(dse::runs_table(r.rows));
  of.emit(dse::pareto_table(r));
  std::size_t failed = 0;
  for (const auto& row : r.rows) failed += row.ok ? 0 : 1;
  std::printf("%zu runs, %zu failed, energy front %zu points, area front %zu points\n", r.rows.size(), failed,
              r.energy_front.size(), r.area_front.size());
  return failed == 0 ? ok : failure;
}

int cmd_scale(const ConfigFlags& cf, const OutputFlags& of, const std::vector<std::size_t>& hiddens,
              const std::vector<double>& nzs, const dse::ScalingOptions& opts) {
  sim::AcceleratorConfig base = dse::experiment_config("LANESx256");
  const sim::AcceleratorConfig cfg = cf.resolve(base);
  const auto pts = dse::sparsity_scaling(hiddens, nzs, cfg, opts);
  of.emit(dse::scaling_table(pts));
  for (const auto& p : pts) {
    std::printf("hidden=%zu nz=%.2f sparse=%llu dense=%llu speedup=%.2f\n", p.hidden, p.nz,
                static_cast<unsigned long long>(p.sparse_cycles), static_cast<unsigned long long>(p.dense_cycles),
                p.speedup);
  }
  return ok;
}

int cmd_compare_enc(const WorkloadFlags& wf, const OutputFlags& of, const std::vector<std::size_t>& parts,
                    std::size_t rows, std::size_t cols, double nz, std::size_t layer, const std::string& which) {
  rnn::CompactMatrix m;
  if (!wf.model.empty()) {
    const rnn::RnnNetwork net = rnn::load_network(wf.model);
    if (layer >= net.layers.size()) throw ConfigError("--layer out of range");
    const auto& l = net.layers[layer];
    if (which == "wx") m = l.wx;
    else if (which == "wh") m = l.wh;
    else if (which == "vx") m = l.vx;
    else if (which == "vh") m = l.vh;
    else throw ConfigError("--matrix must be wx, wh, vx or vh");
  } else {
    m = random_matrix(rows, cols, nz, wf.seed);
  }
  const auto pts = dse::encoding_experiment(m, parts);
  of.emit(dse::encoding_table(pts));
  for (const auto& p : pts) {
    std::printf("partitions=%zu %-9s metadata=%llu total=%llu\n", p.partitions, p.format.c_str(),
                static_cast<unsigned long long>(p.metadata_bits), static_cast<unsigned long long>(p.total_bits));
  }
  return ok;
}

int cmd_report(const WorkloadFlags& wf, const OutputFlags& of, const std::string& units_path,
               std::vector<std::string> experiments) {
  const cost::UnitCosts units = load_units(units_path);
  auto want = [&](const std::string& e) {
    return std::find(experiments.begin(), experiments.end(), e) != experiments.end() ||
           std::find(experiments.begin(), experiments.end(), "all") != experiments.end();
  };
  for (const auto& e : experiments) {
    if (e != "all" && e != "fig8" && e != "fig9" && e != "fig11" && e != "predication" && e != "double-buffer") {
      throw ConfigError("unknown experiment '" + e + "' (fig8|fig9|fig11|predication|double-buffer|all)");
    }
  }
  const dse::Workload w = dse::prepare_workload(wf.resolve(), wf.seed);
  const auto names = sim::table4_names();

  if (want("fig8") || want("fig11")) {
    const auto masr = dse::design_costs(w, names, units);
    std::vector<cost::DesignCost> costs;
    for (const auto& p : masr) costs.push_back(p.cost);
    if (want("fig8")) of.emit(dse::cost_breakdown_table(costs));
    if (want("fig11")) {
      const std::vector<int> pes = {32, 64, 128, 256, 512, 1024};
      for (const auto& b : dse::baseline_costs(w, pes, units)) costs.push_back(b.cost);
      of.emit(dse::cost_breakdown_table(costs, "fig11-breakdown"));
      of.emit(dse::comparison_table(cost::compare(costs, 0), "fig11-area"));
      of.emit(dse::comparison_table(cost::compare(costs, 3), "fig11-energy"));
    }
  }
  if (want("fig9")) {
    const std::vector<int> levels = {1, 2, 4, 8};
    sim::AcceleratorConfig c = dse::experiment_config("LANESx1024");
    c.load_balance = sim::LoadBalance::none;
    c.act_banks = 1;
    of.emit(dse::bank_table(dse::bank_experiment(w, c, levels)));
    c.act_banks = 8;
    of.emit(dse::queue_table(dse::queue_experiment(w, c, levels)));
    const std::vector<sim::LoadBalance> modes = {sim::LoadBalance::none, sim::LoadBalance::horizontal,
                                                 sim::LoadBalance::vertical, sim::LoadBalance::both};
    of.emit(dse::utilization_table(dse::balance_experiment(w, names, modes)));
  }
  if (want("predication")) {
    sim::AcceleratorConfig c = sim::table4_config("LANESx32");
    c.stream_weights = false;
    const std::vector<double> thetas = {-4.0, -2.0, -1.0, -0.5, -0.25, 0.0};
    of.emit(dse::predication_table(dse::predication_experiment(w, c, thetas)));
  }
  if (want("double-buffer")) {
    const std::vector<std::size_t> steps = {50, 250, 333, 400};
    of.emit(dse::double_buffer_table(dse::double_buffer_experiment(
        w.net, dse::experiment_config("LANESx1024"), steps, wf.input_nz.value_or(0.4), wf.seed)));
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse RNN accelerator simulator and design-space explorer"};
  app.require_subcommand(1);
  std::string units_path;
  int threads = 0;
  app.add_option("--unit-costs", units_path, "unit-cost override file (JSON)");
  app.add_option("--threads", threads, "worker threads (MASR_THREADS also works)");

  ConfigFlags run_cfg, sweep_cfg, scale_cfg;
  WorkloadFlags run_wl, sweep_wl, enc_wl, report_wl;
  OutputFlags run_out, sweep_out, scale_out, enc_out, report_out;

  auto* run = app.add_subcommand("run", "simulate one configuration and check it against the reference model");
  run_cfg.add(run);
  run_wl.add(run);
  run_out.add(run);
  std::string save_model, save_utt;
  run->add_option("--save-model", save_model, "write the model used to this file");
  run->add_option("--save-utterance", save_utt, "write the utterance used to this file");

  auto* sweep = app.add_subcommand("sweep", "run a configuration sweep and compute Pareto fronts");
  std::string spec_path;
  std::vector<int> lanes, queues, banks;
  std::vector<std::string> modes, designs;
  std::vector<std::uint64_t> seeds;
  sweep->add_option("-s,--spec", spec_path, "sweep spec file (JSON)");
  sweep->add_option("--lanes", lanes, "keep only these lane counts")->delimiter(',');
  sweep->add_option("--queue-depths", queues)->delimiter(',');
  sweep->add_option("--bank-counts", banks)->delimiter(',');
  sweep->add_option("--balance-modes", modes)->delimiter(',');
  sweep->add_option("--designs", designs, "named design points instead of every topology")->delimiter(',');
  sweep->add_option("--seeds", seeds)->delimiter(',');
  sweep_cfg.add(sweep);
  sweep_wl.add(sweep);
  sweep_out.add(sweep);

  auto* scale = app.add_subcommand("scale", "sparse-versus-dense speedup on synthetic layers");
  std::vector<std::size_t> hiddens{1024, 3072};
  std::vector<double> nzs{0.10, 0.25, 0.50};
  dse::ScalingOptions sopts;
  scale->add_option("--hidden-sizes", hiddens)->delimiter(',');
  scale->add_option("--nz", nzs)->delimiter(',');
  scale->add_option("--timesteps", sopts.timesteps);
  scale->add_option("--seed", sopts.seed);
  scale_cfg.add(scale);
  scale_out.add(scale);

  auto* enc = app.add_subcommand("compare-enc", "metadata footprint of bitmask, CSR and run-length encodings");
  std::vector<std::size_t> parts{32, 64, 128, 256, 512};
  std::size_t rows = 800, cols = 800, layer = 0;
  double nz = 0.33;
  std::string which = "wh";
  enc->add_option("--partitions", parts)->delimiter(',');
  enc->add_option("--rows", rows);
  enc->add_option("--cols", cols);
  enc->add_option("--nz", nz);
  enc->add_option("--layer", layer, "layer of --model to encode");
  enc->add_option("--matrix", which, "wx|wh|vx|vh of --model");
  enc_wl.add(enc);
  enc_out.add(enc);

  auto* report = app.add_subcommand("report", "regenerate the experiment tables on a workload");
  std::vector<std::string> experiments{"all"};
  report->add_option("-e,--experiments", experiments, "fig8,fig9,fig11,predication,double-buffer or all")
      ->delimiter(',');
  report_wl.add(report);
  report_out.add(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    apply_thread_override();
    if (threads > 0) omp_set_num_threads(threads);
    if (*run) return cmd_run(run_cfg, run_wl, run_out, units_path, save_model, save_utt);
    if (*sweep) {
      return cmd_sweep(spec_path, sweep_cfg, sweep_wl, sweep_out, units_path, lanes, queues, banks, modes, designs,
                       seeds, threads);
    }
    if (*scale) return cmd_scale(scale_cfg, scale_out, hiddens, nzs, sopts);
    if (*enc) return cmd_compare_enc(enc_wl, enc_out, parts, rows, cols, nz, layer, which);
    if (*report) return cmd_report(report_wl, report_out, units_path, experiments);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const CapacityError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return io_error;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return integrity_error;
  } catch (const StructuralError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return io_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return failure;
}
