#include "masr/dse/report.hpp"

#include <cstdio>

#include "masr/dse/config_io.hpp"

namespace masr::dse {

namespace {

Cell i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void breakdown_rows(Table& t, Cell key, const sim::CycleBreakdown& b) {
  const std::pair<const char*, double> cats[] = {{"mac_busy", b.mac_busy}, {"stall", b.stall},   {"idle", b.idle},
                                                 {"frontend", b.frontend}, {"vvadd", b.vvadd}, {"dram", b.dram}};
  for (const auto& [name, f] : cats) t.add_row({key, std::string(name), f});
}

}  // namespace

Table runs_table(std::span<const RunRecord> rows) {
  Table t;
  t.name = "runs";
  t.columns = {"id",           "seed",          "ok",           "error",          "horiz_lanes",    "vert_lanes",
               "horiz_pes",    "lanes",         "queue_depth",  "act_banks",      "load_balance",   "theta",
               "golden_match", "checksum",      "total_cycles", "utilization",    "mac_count",      "work_mask_popcount",
               "steals",       "matvec_cycles", "fill_cycles",  "vvadd_cycles",   "weight_load_cycles",
               "exposed_dram_cycles",           "frac_mac_busy", "frac_stall",    "frac_idle",      "frac_frontend",
               "frac_vvadd",   "frac_dram",     "dram_bytes",   "weight_read_bits", "mask_read_bits", "act_read_bits",
               "area_total",   "energy_total",  "energy_onchip", "power"};
  for (auto c : cost::kCategories) {
    if (c != cost::Category::dram) t.columns.push_back("area_" + std::string(cost::to_string(c)));
  }
  for (auto c : cost::kCategories) t.columns.push_back("energy_" + std::string(cost::to_string(c)));

  for (const auto& r : rows) {
    const auto& c = r.config;
    const auto b = r.ok ? sim::cycle_breakdown(r.stats) : sim::CycleBreakdown{};
    std::vector<Cell> row = {r.id,
                             i64(r.seed),
                             std::int64_t{r.ok},
                             r.error,
                             std::int64_t{c.horiz_lanes},
                             std::int64_t{c.vert_lanes},
                             std::int64_t{c.horiz_pes},
                             std::int64_t{c.total_lanes()},
                             std::int64_t{c.queue_depth},
                             std::int64_t{c.act_banks},
                             sim::to_string(c.load_balance),
                             opt(c.predication_theta),
                             std::int64_t{r.golden_match},
                             hex(r.checksum),
                             i64(r.stats.total_cycles),
                             r.ok ? Cell(r.stats.utilization()) : Cell(std::monostate{}),
                             i64(r.stats.mac_count),
                             i64(r.stats.work_mask_popcount),
                             i64(r.stats.steals),
                             i64(r.stats.matvec_cycles),
                             i64(r.stats.fill_cycles),
                             i64(r.stats.vvadd_cycles),
                             i64(r.stats.weight_load_cycles),
                             i64(r.stats.exposed_dram_cycles()),
                             b.mac_busy,
                             b.stall,
                             b.idle,
                             b.frontend,
                             b.vvadd,
                             b.dram,
                             i64(r.stats.dram_bytes),
                             i64(r.stats.sram_reads.weight),
                             i64(r.stats.sram_reads.weight_mask),
                             i64(r.stats.sram_reads.act),
                             r.cost.total_area(),
                             r.cost.total_energy(),
                             r.cost.onchip_energy(),
                             r.cost.power()};
    for (auto cat : cost::kCategories) {
      if (cat != cost::Category::dram) row.emplace_back(r.cost.area_of(cat));
    }
    for (auto cat : cost::kCategories) row.emplace_back(r.cost.energy_of(cat));
    t.add_row(std::move(row));
  }
  return t;
}

Table pareto_table(const SweepResult& r) {
  Table t;
  t.name = "fig7";
  t.columns = {"id", "cycles", "energy", "area", "energy_front", "area_front"};
  auto on = [](const std::vector<ParetoPoint>& front, const std::string& id) {
    for (const auto& p : front) {
      if (p.id == id) return std::int64_t{1};
    }
    return std::int64_t{0};
  };
  for (const auto& p : r.points) {
    t.add_row({p.id, p.cycles, p.energy, p.area, on(r.energy_front, p.id), on(r.area_front, p.id)});
  }
  return t;
}

Table cost_breakdown_table(std::span<const cost::DesignCost> designs, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"design", "category", "area", "energy"};
  for (const auto& d : designs) {
    for (auto c : cost::kCategories) t.add_row({d.name, std::string(cost::to_string(c)), d.area_of(c), d.energy_of(c)});
  }
  return t;
}

Table bank_table(std::span<const BreakdownPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"banks", "category", "fraction"};
  for (const auto& p : points) breakdown_rows(t, std::int64_t{p.config.act_banks}, p.breakdown);
  return t;
}

Table queue_table(std::span<const BreakdownPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"queue_depth", "category", "fraction"};
  for (const auto& p : points) breakdown_rows(t, std::int64_t{p.config.queue_depth}, p.breakdown);
  return t;
}

Table utilization_table(std::span<const BreakdownPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"id", "lanes", "balance", "utilization", "cycles", "golden_match"};
  for (const auto& p : points) {
    t.add_row({p.id, std::int64_t{p.config.total_lanes()}, sim::to_string(p.config.load_balance), p.utilization,
               i64(p.cycles), std::int64_t{p.golden_match}});
  }
  return t;
}

Table scaling_table(std::span<const ScalingPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"hidden", "nz", "hidden_nz", "sparse_cycles", "dense_cycles", "speedup", "golden_match"};
  for (const auto& p : points) {
    t.add_row({i64(p.hidden), p.nz, p.hidden_nz, i64(p.sparse_cycles), i64(p.dense_cycles), p.speedup,
               std::int64_t{p.golden_match}});
  }
  return t;
}

Table comparison_table(std::span<const cost::ComparisonRow> rows, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"design", "category", "area_ratio", "energy_ratio"};
  for (const auto& r : rows) t.add_row({r.design, r.category, opt(r.area_ratio), opt(r.energy_ratio)});
  return t;
}

Table encoding_table(std::span<const EncodingPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"partitions", "format", "value_bits", "mask_bits", "row_offset_bits", "column_index_bits",
               "metadata_bits", "total_bits"};
  for (const auto& p : points) {
    t.add_row({i64(p.partitions), p.format, i64(p.value_bits), i64(p.mask_bits), i64(p.row_offset_bits),
               i64(p.column_index_bits), i64(p.metadata_bits), i64(p.total_bits)});
  }
  return t;
}

Table predication_table(std::span<const PredicationPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"theta", "skip_fraction", "mismatch_rate", "cycles", "base_cycles", "reduction", "golden_match"};
  for (const auto& p : points) {
    t.add_row({p.theta, p.skip_fraction, p.mismatch_rate, i64(p.cycles), i64(p.base_cycles), p.reduction,
               std::int64_t{p.golden_match}});
  }
  return t;
}

Table double_buffer_table(std::span<const DoubleBufferPoint> points, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"timesteps", "transfer_cycles", "compute_cycles", "ratio", "exposed_cycles", "dram_bytes",
               "golden_match"};
  for (const auto& p : points) {
    t.add_row({i64(p.timesteps), i64(p.transfer_cycles), i64(p.compute_cycles), p.ratio, i64(p.exposed_cycles),
               i64(p.dram_bytes), std::int64_t{p.golden_match}});
  }
  return t;
}

nlohmann::ordered_json run_report(const Workload& w, const RunRecord& r, const cost::UnitCosts& units) {
  using J = nlohmann::ordered_json;
  J j;
  j["schema_version"] = kReportSchemaVersion;
  j["workload"] = {{"name", w.name},
                   {"seed", w.seed},
                   {"layers", w.net.layers.size()},
                   {"input_dim", w.net.input_dim()},
                   {"hidden", w.net.layers.front().hidden()},
                   {"bidirectional", w.net.direction == rnn::Direction::bidirectional},
                   {"timesteps", w.utterance.timesteps()},
                   {"nonzero_weights", w.net.nonzero_count()},
                   {"parameters", w.net.param_count()}};
  j["config"] = J::parse(to_json(r.config).dump());
  j["id"] = r.id;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  j["golden_match"] = r.golden_match;
  j["checksum"] = hex(r.checksum);
  const auto& s = r.stats;
  const auto b = sim::cycle_breakdown(s);
  j["stats"] = {{"total_cycles", s.total_cycles},
                {"utilization", s.utilization()},
                {"mac_count", s.mac_count},
                {"work_mask_popcount", s.work_mask_popcount},
                {"steals", s.steals},
                {"predicated_columns", s.predicated_columns},
                {"matvec_cycles", s.matvec_cycles},
                {"fill_cycles", s.fill_cycles},
                {"vvadd_cycles", s.vvadd_cycles},
                {"accumulate_cycles", s.accumulate_cycles},
                {"weight_load_cycles", s.weight_load_cycles},
                {"weight_exposed_cycles", s.weight_exposed_cycles},
                {"act_load_cycles", s.act_load_cycles},
                {"act_exposed_cycles", s.act_exposed_cycles},
                {"preload_cycles", s.preload_cycles},
                {"dram_bytes", s.dram_bytes},
                {"sram_read_bits",
                 {{"weight", s.sram_reads.weight},
                  {"weight_mask", s.sram_reads.weight_mask},
                  {"act", s.sram_reads.act},
                  {"act_mask", s.sram_reads.act_mask}}},
                {"act_write_bits", s.act_write_bits},
                {"regfile_reads", s.regfile_reads},
                {"regfile_writes", s.regfile_writes},
                {"queue_pushes", s.queue_pushes},
                {"queue_pops", s.queue_pops},
                {"vvadd_ops", s.vvadd_ops}};
  j["cycle_breakdown"] = {{"mac_busy", b.mac_busy}, {"stall", b.stall}, {"idle", b.idle},
                          {"frontend", b.frontend}, {"vvadd", b.vvadd}, {"dram", b.dram}};
  if (r.config.predication_theta) {
    j["predication"] = {{"skip_fraction", r.predication.skip_fraction()},
                        {"mismatch_rate", r.predication.mismatch_rate()}};
  }
  J area = J::object(), energy = J::object();
  for (auto c : cost::kCategories) {
    if (c != cost::Category::dram) area[std::string(cost::to_string(c))] = r.cost.area_of(c);
    energy[std::string(cost::to_string(c))] = r.cost.energy_of(c);
  }
  j["cost"] = {{"area", area},
               {"energy", energy},
               {"area_total", r.cost.total_area()},
               {"energy_total", r.cost.total_energy()},
               {"energy_onchip", r.cost.onchip_energy()},
               {"power", r.cost.power()}};
  j["unit_costs"] = J::parse(to_json(units).dump());
  return j;
}

}  // namespace masr::dse
