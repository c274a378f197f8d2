#include <doctest.h>

#include "helpers.hpp"
#include "masr/common/error.hpp"
#include "masr/sim/partition.hpp"

using namespace masr;
using namespace masr::sim;

TEST_SUITE("partition") {
  TEST_CASE("even tiling gives the remainder to the first parts") {
    CHECK(even_tile(10, 4, 0) == Range{0, 3});
    CHECK(even_tile(10, 4, 1) == Range{3, 6});
    CHECK(even_tile(10, 4, 2) == Range{6, 8});
    CHECK(even_tile(10, 4, 3) == Range{8, 10});
    CHECK(even_tile(2, 4, 3).size() == 0);
  }

  TEST_CASE("tiles cover every element exactly once") {
    AcceleratorConfig c;
    c.horiz_lanes = 8;
    c.vert_lanes = 4;
    c.horiz_pes = 2;
    const TileMap t = tile_matrix(50, 37, c);
    REQUIRE(t.lanes.size() == 32);
    std::vector<int> hits(50 * 37, 0);
    for (const auto& l : t.lanes) {
      CHECK(t.index(l.h, l.v) == static_cast<std::size_t>(&l - t.lanes.data()));
      for (std::size_t r = l.rows.begin; r < l.rows.end; ++r) {
        for (std::size_t col = l.cols.begin; col < l.cols.end; ++col) ++hits[r * 37 + col];
      }
    }
    for (int h : hits) CHECK(h == 1);
  }

  TEST_CASE("ring neighbours") {
    AcceleratorConfig c;
    c.horiz_lanes = 4;
    c.vert_lanes = 2;
    c.horiz_pes = 2;  // two lanes per PE
    const TileMap t = tile_matrix(16, 16, c);
    CHECK(t.vertical_neighbor(t.index(1, 0)) == t.index(1, 1));
    CHECK(t.vertical_neighbor(t.index(1, 1)) == t.index(1, 0));
    // horizontal stealing stays inside the PE that shares the register file
    CHECK(t.horizontal_neighbor(t.index(0, 0)) == t.index(1, 0));
    CHECK(t.horizontal_neighbor(t.index(1, 0)) == t.index(0, 0));
    CHECK(t.horizontal_neighbor(t.index(2, 1)) == t.index(3, 1));
  }

  TEST_CASE("capacity overflow is reported") {
    const auto net = testutil::random_network(32, 32, 1, 0.5, rnn::Direction::bidirectional, 2);
    AcceleratorConfig c;
    c.horiz_lanes = 2;
    c.vert_lanes = 2;
    c.horiz_pes = 1;
    CHECK_NOTHROW((void)partition(net, c));
    c.capacities.weight_bytes_per_lane = 16;
    CHECK_THROWS_AS((void)partition(net, c), CapacityError);
  }

  TEST_CASE("duplicated tails only with balancing") {
    const auto net = testutil::random_network(64, 64, 1, 0.5, rnn::Direction::bidirectional, 3);
    AcceleratorConfig c;
    c.horiz_lanes = 4;
    c.vert_lanes = 4;
    c.horiz_pes = 1;
    CHECK(partition(net, c).max_lane.dup_mask_bits == 0);
    c.load_balance = LoadBalance::vertical;
    CHECK(partition(net, c).max_lane.dup_mask_bits > 0);
  }

  TEST_CASE("32 lanes on an 800-unit layer hold about 32KB of values and 10KB of masks each") {
    const auto net = testutil::random_network(800, 800, 1, 0.33, rnn::Direction::bidirectional, 8);
    const LaneAssignment a = partition(net, table4_config("LANESx32"));
    const double kb_values = static_cast<double>(a.max_lane.weight_bytes()) / 1024.0;
    const double kb_masks = static_cast<double>(a.max_lane.mask_bytes()) / 1024.0;
    CHECK(kb_values == doctest::Approx(32.0).epsilon(0.15));
    CHECK(kb_masks == doctest::Approx(10.0).epsilon(0.15));
  }
}
