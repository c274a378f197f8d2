#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "masr/common/error.hpp"
#include "masr/cost/baseline.hpp"
#include "masr/cost/cost_model.hpp"
#include "masr/cost/unit_costs.hpp"
#include "masr/rnn/synthetic.hpp"
#include "masr/sim/partition.hpp"

using namespace masr;
using namespace masr::cost;

namespace {

MasrDesign tiny_design() {
  MasrDesign d;
  d.lanes = 4;
  d.pes = 2;
  d.weight_array_bits = 4096;
  d.mask_array_bits = 2048;
  d.act_bank_bits = 8192;
  d.mask_register_bits = 4 * 4 * 512;
  d.other_register_bits = 1000;
  return d;
}

sim::SimStats lanes_only(std::uint64_t cycles) {
  sim::SimStats s;
  s.lanes.resize(4);
  s.total_cycles = cycles;
  for (auto& l : s.lanes) l.idle = cycles;
  return s;
}

}  // namespace

TEST_SUITE("cost") {
  TEST_CASE("curves interpolate in log size") {
    const Curve c({{1024, 1.0}, {4096, 3.0}});
    CHECK(c.at(100) == doctest::Approx(1.0));
    CHECK(c.at(2048) == doctest::Approx(2.0));
    CHECK(c.at(16384) == doctest::Approx(5.0));
    CHECK_THROWS_AS(Curve({{4096, 1.0}, {1024, 1.0}}), ParameterError);
  }

  TEST_CASE("default curves follow the size trends") {
    const UnitCosts u = UnitCosts::defaults();
    CHECK_NOTHROW(u.validate());
    double prev_e = 0.0;
    double prev_a = 1e9;
    double prev_total = 0.0;
    for (double bits = 256; bits <= (1 << 24); bits *= 2) {
      const double e = u.sram_read_energy.at(bits);
      const double a = u.sram_area.at(bits);
      CHECK(e >= prev_e);
      CHECK(a <= prev_a);
      CHECK(a * bits >= prev_total);
      prev_e = e;
      prev_a = a;
      prev_total = a * bits;
    }
  }

  TEST_CASE("json overrides and rejects unknown keys") {
    const UnitCosts u = unit_costs_from_json(nlohmann::json{{"mac_energy", 2.5}});
    CHECK(u.mac_energy == 2.5);
    CHECK(u.queue_op_energy == UnitCosts::defaults().queue_op_energy);
    CHECK_THROWS_AS((void)unit_costs_from_json(nlohmann::json{{"mac_energie", 1}}), ConfigError);
    const UnitCosts back = unit_costs_from_json(to_json(u));
    CHECK(back.mac_energy == 2.5);
    CHECK(back.sram_area.knots() == u.sram_area.knots());
    CHECK_THROWS_AS((void)unit_costs_from_json(nlohmann::json{{"mac_energy", -1}}), ConfigError);
  }

  TEST_CASE("an idle run only leaks and clocks registers") {
    const UnitCosts u = UnitCosts::defaults();
    const MasrDesign d = tiny_design();
    const DesignCost c = cost_masr(lanes_only(1000), d, u);
    const double leak = static_cast<double>(d.sram_bits()) * 1000 * u.leakage_per_bit_per_cycle;
    const double regs = static_cast<double>(d.register_bits()) * 1000 * u.register_energy_per_bit_cycle;
    CHECK(c.energy_of(Category::dram) == 0.0);
    CHECK(c.total_energy() == doctest::Approx(leak + regs));
    CHECK(c.cycles == 1000);
    CHECK(c.power() == doctest::Approx((leak + regs) / 1000));
  }

  TEST_CASE("MAC energy is linear in the MAC count") {
    const UnitCosts u = UnitCosts::defaults();
    auto s1 = lanes_only(100);
    auto s2 = s1;
    s1.mac_count = 1000;
    s2.mac_count = 3000;
    const double e1 = cost_masr(s1, tiny_design(), u).energy_of(Category::logic);
    const double e2 = cost_masr(s2, tiny_design(), u).energy_of(Category::logic);
    const double e0 = cost_masr(lanes_only(100), tiny_design(), u).energy_of(Category::logic);
    CHECK(e2 - e0 == doctest::Approx(3 * (e1 - e0)));
    CHECK(e1 - e0 == doctest::Approx(1000 * u.mac_energy));
  }

  TEST_CASE("comparison ratios") {
    DesignCost a;
    a.name = "a";
    a.area_of(Category::weight_sram) = 10;
    a.energy_of(Category::weight_sram) = 4;
    DesignCost b = a;
    b.name = "b";
    b.area_of(Category::row_offset_sram) = 5;
    const std::vector<DesignCost> ds{a, b};
    const auto rows = compare(ds, 0);
    for (const auto& r : rows) {
      if (r.design == "a" && (r.category == "weight_sram" || r.category == "total")) {
        CHECK(*r.area_ratio == doctest::Approx(1.0));
        CHECK(*r.energy_ratio == doctest::Approx(1.0));
      }
      if (r.category == "row_offset_sram") CHECK_FALSE(r.area_ratio.has_value());
      if (r.design == "b" && r.category == "total") CHECK(*r.area_ratio == doctest::Approx(1.5));
    }
    CHECK_THROWS_AS((void)compare(ds, 2), ParameterError);
    CHECK_THROWS_AS((void)compare(std::span<const DesignCost>{}, 0), ParameterError);
    const std::vector<DesignCost> zero{DesignCost{}};
    CHECK_THROWS_AS((void)compare(zero, 0), ParameterError);
  }

  TEST_CASE("row offset storage grows with the PE count") {
    const auto net = testutil::random_network(64, 64, 1, 0.3, rnn::Direction::unidirectional, 4);
    const auto utt = rnn::random_utterance(64, 3, 0.5, 10, 2);
    const auto traces = trace_network(net, utt);
    const UnitCosts u = UnitCosts::defaults();
    const auto r64 = cost_csr_baseline(net, traces, 64, BaselineKind::eie, u, 333);
    const auto r512 = cost_csr_baseline(net, traces, 512, BaselineKind::eie, u, 333);
    CHECK(r512.cost.area_of(Category::row_offset_sram) ==
          doctest::Approx(8 * r64.cost.area_of(Category::row_offset_sram)));
    const auto ese = cost_csr_baseline(net, traces, 64, BaselineKind::ese, u, 333);
    CHECK(ese.counts.rows_processed >= r64.counts.rows_processed);
    CHECK(ese.counts.entries >= r64.counts.entries);
    CHECK(r64.cost.name == "eie-p64");
  }

  TEST_CASE("compact activation storage scales with density") {
    const auto net = testutil::random_network(100, 100, 2, 0.3, rnn::Direction::unidirectional, 4);
    const std::vector<double> lo{0.1, 0.1}, hi{0.5, 0.5};
    CHECK(compact_activation_bits(net, lo, lo, 10) < compact_activation_bits(net, hi, hi, 10));
    CHECK(compact_activation_bits(net, lo, lo, 20) > compact_activation_bits(net, lo, lo, 10));
  }

  TEST_CASE("missing cost file") {
    CHECK_THROWS_AS((void)load_unit_costs("/nonexistent/costs.json"), IoError);
  }
}
