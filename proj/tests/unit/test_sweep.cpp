#include <doctest.h>

#include "masr/common/error.hpp"
#include "masr/dse/sweep.hpp"

using namespace masr;
using namespace masr::dse;

namespace {

SweepSpec tiny() {
  SweepSpec s;
  s.topologies = {{8, 4, 1}, {4, 2, 1}, {4, 2, 1}};
  s.queue_depths = {2, 1};
  s.balance_modes = {sim::LoadBalance::none, sim::LoadBalance::vertical};
  s.workload.synthetic.hidden = 40;
  s.workload.synthetic.layers = 1;
  s.workload.synthetic.timesteps = 4;
  s.workload.synthetic.direction = rnn::Direction::unidirectional;
  return s;
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("expansion is sorted and unique") {
    const auto cfgs = expand(tiny());
    CHECK(cfgs.size() == 2 * 2 * 2);
    for (std::size_t i = 1; i < cfgs.size(); ++i) CHECK(cfgs[i - 1].id() < cfgs[i].id());
    auto bad = tiny();
    bad.topologies.push_back({3, 2, 1});
    CHECK_THROWS_AS((void)expand(bad), ConfigError);
  }

  TEST_CASE("runs are deterministic and match the sweep rows") {
    const auto spec = tiny();
    const auto units = cost::UnitCosts::defaults();
    const Workload w = prepare_workload(spec.workload, 1);
    const auto cfgs = expand(spec);
    const auto r = run_sweep(spec, units, 2);
    REQUIRE(r.rows.size() == cfgs.size());
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      const RunRecord a = run_one(w, cfgs[i], units);
      CHECK(a.ok);
      CHECK(a.golden_match);
      CHECK(r.rows[i].id == a.id);
      CHECK(r.rows[i].stats.total_cycles == a.stats.total_cycles);
      CHECK(r.rows[i].checksum == a.checksum);
      CHECK(r.rows[i].cost.total_energy() == a.cost.total_energy());
    }
    const auto again = run_sweep(spec, units, 1);
    for (std::size_t i = 0; i < cfgs.size(); ++i) CHECK(again.rows[i].stats.total_cycles == r.rows[i].stats.total_cycles);
    CHECK(!r.energy_front.empty());
    CHECK(r.points.size() == cfgs.size());
  }

  TEST_CASE("failures are captured in the record") {
    const Workload w = prepare_workload(tiny().workload, 1);
    auto c = sim::table4_config("LANESx32");
    c.capacities.weight_bytes_per_lane = 1;
    const RunRecord r = run_one(w, c, cost::UnitCosts::defaults());
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.error.empty());
  }

  TEST_CASE("checksum sees every code") {
    std::vector<rnn::CompactVector> a{sparse::encode_vector(std::vector<sparse::Code>{0, 3, 0, 1})};
    auto b = a;
    b[0] = sparse::encode_vector(std::vector<sparse::Code>{0, 3, 0, 2});
    CHECK(output_checksum(a) != output_checksum(b));
    CHECK(output_checksum(a) == output_checksum(a));
  }
}
