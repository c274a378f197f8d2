#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "masr/common/error.hpp"
#include "masr/dse/config_io.hpp"

using namespace masr;
using namespace masr::dse;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string error_of(const std::filesystem::path& p) {
  try {
    (void)load_config(p);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config_io") {
  TEST_CASE("config round trip") {
    sim::AcceleratorConfig c = sim::table4_config("LANESx128");
    c.queue_depth = 3;
    c.act_banks = 8;
    c.load_balance = sim::LoadBalance::both;
    c.predication_theta = -0.25;
    c.stream_weights = false;
    CHECK(config_from_json(to_json(c)) == c);
    const auto d = config_from_json(nlohmann::json{{"design", "LANESx512"}, {"queue_depth", 2}});
    CHECK(d.total_lanes() == 512);
    CHECK(d.queue_depth == 2);
  }

  TEST_CASE("errors carry the file line") {
    const auto bad = write_temp("masr_bad_key.json", "{\n  \"horiz_lanes\": 8,\n  \"queue_dept\": 2\n}\n");
    const std::string e1 = error_of(bad);
    CHECK(e1.find("masr_bad_key.json:3") != std::string::npos);
    CHECK(e1.find("queue_dept") != std::string::npos);
    const auto syntax = write_temp("masr_syntax.json", "{\n  \"horiz_lanes\": 8,\n  oops\n}\n");
    CHECK(error_of(syntax).find("masr_syntax.json:3") != std::string::npos);
    CHECK_THROWS_AS((void)load_config("/nonexistent/c.json"), IoError);
  }

  TEST_CASE("sweep specs") {
    const auto s = sweep_from_json(nlohmann::json::parse(R"({
      "topologies": [[4, 2, 1], [8, 4, 2]],
      "queue_depths": [1, 2],
      "balance_modes": ["none", "vlb"],
      "workload": {"synthetic": {"hidden": 64, "layers": 1, "bidirectional": false}}
    })"));
    CHECK(s.topologies.size() == 2);
    CHECK(s.topologies[1] == Topology{8, 4, 2});
    CHECK(s.balance_modes[1] == sim::LoadBalance::vertical);
    CHECK(s.workload.synthetic.hidden == 64);
    CHECK(s.workload.synthetic.direction == rnn::Direction::unidirectional);
    CHECK(sweep_from_json(nlohmann::json{{"topologies", "all"}}).topologies.size() == all_topologies().size());
    CHECK_THROWS_AS((void)sweep_from_json(nlohmann::json{{"topologys", "all"}}), ConfigError);
  }

  TEST_CASE("every topology is legal") {
    const auto all = all_topologies();
    CHECK(all.size() == 126);
    for (const auto& t : all) {
      sim::AcceleratorConfig c;
      c.horiz_lanes = t.h;
      c.vert_lanes = t.v;
      c.horiz_pes = t.p;
      CHECK_NOTHROW((void)sim::validate_config(c));
    }
  }

  TEST_CASE("synthetic spec round trip") {
    rnn::SyntheticSpec s;
    s.hidden = 300;
    s.act_nz = 0.15;
    s.seed = 99;
    const auto b = synthetic_from_json(to_json(s));
    CHECK(b.hidden == 300);
    CHECK(b.act_nz == 0.15);
    CHECK(b.seed == 99);
    CHECK(b.direction == s.direction);
  }
}
