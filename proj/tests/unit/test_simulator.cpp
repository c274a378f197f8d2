#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "masr/common/error.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/kernels.hpp"
#include "masr/sim/lane_engine.hpp"
#include "masr/sim/simulator.hpp"

using namespace masr;
using namespace masr::sim;

namespace {

AcceleratorConfig small(int h, int v, int p, int q, int banks, LoadBalance lb) {
  AcceleratorConfig c;
  c.horiz_lanes = h;
  c.vert_lanes = v;
  c.horiz_pes = p;
  c.queue_depth = q;
  c.act_banks = banks;
  c.load_balance = lb;
  return c;
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("one lane, dense 4x4: fill, sixteen MACs, one pop") {
    sparse::DenseCodes d(4, 4);
    for (auto& c : d.data) c = 3;
    const auto w = sparse::CompactMatrix::encode(d, QuantParams{10, 1.0, 1.0});
    const auto a = sparse::encode_vector(std::vector<sparse::Code>{1, 2, 3, 4});
    const AcceleratorConfig c = small(1, 1, 1, 1, 1, LoadBalance::none);
    LaneEngine eng(c);
    const TileMap t = tile_matrix(4, 4, c);
    std::vector<rnn::SplitAccumulator> out(4);
    SimStats s;
    s.lanes.resize(1);
    const auto cycles = eng.run_matvec(t, w, a, {}, out, s);
    CHECK(cycles == 5 + 16 + 1);
    CHECK(s.mac_count == 16);
    for (const auto& o : out) CHECK(o.pp == 3 * (1 + 2 + 3 + 4));
  }

  TEST_CASE("every configuration reproduces the golden outputs") {
    const auto net = testutil::random_network(24, 40, 2, 0.4, rnn::Direction::bidirectional, 11);
    const auto utt = rnn::random_utterance(24, 5, 0.5, 10, 4);
    const auto golden = rnn::forward_network(net, utt);
    for (auto lb : {LoadBalance::none, LoadBalance::horizontal, LoadBalance::vertical, LoadBalance::both}) {
      for (int q : {1, 3}) {
        for (auto [h, v, p] : {std::tuple{1, 1, 1}, std::tuple{4, 2, 2}, std::tuple{8, 4, 1}, std::tuple{2, 8, 2}}) {
          AcceleratorConfig c = small(h, v, p, q, 2, lb);
          c.steal_both_ways = (h == 8);
          CAPTURE(c.id());
          const SimResult r = simulate_network(net, utt, c);
          REQUIRE(r.outputs.size() == golden.outputs.size());
          for (std::size_t t = 0; t < r.outputs.size(); ++t) CHECK(r.outputs[t] == golden.outputs[t]);
          CHECK(r.stats.mac_count == r.stats.work_mask_popcount);
          std::uint64_t macs = 0;
          for (const auto& l : golden.layers) macs += l.macs;
          CHECK(r.stats.mac_count == macs);
          CHECK_NOTHROW(r.stats.check_accounting());
        }
      }
    }
  }

  TEST_CASE("balancing steals and does not slow a skewed matrix") {
    // all the work sits in the bottom rows of each vertical slice
    const std::size_t n = 64;
    sparse::DenseCodes d(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t col = 0; col < n; ++col) {
        if (r < 16 && (r + col) % 2 == 0) d(r, col) = 5;
      }
    }
    rnn::RnnLayer layer;
    layer.wx = sparse::CompactMatrix::encode(d, QuantParams{10, 1.0, 1.0});
    layer.wh = layer.wx;
    layer.vx = layer.wx;
    layer.vh = layer.wx;
    layer.b_fwd.assign(n, 0.1);
    layer.b_bwd.assign(n, 0.1);
    layer.act = QuantParams{10, 4.0, 4.0};
    rnn::RnnNetwork net;
    net.direction = rnn::Direction::unidirectional;
    net.layers.push_back(layer);
    const auto utt = rnn::random_utterance(n, 3, 1.0, 10, 9);
    auto base = small(1, 4, 1, 2, 1, LoadBalance::none);
    base.dup_fraction = 0.5;
    auto lb = base;
    lb.load_balance = LoadBalance::vertical;
    const auto r0 = simulate_network(net, utt, base);
    const auto r1 = simulate_network(net, utt, lb);
    CHECK(r1.stats.steals > 0);
    CHECK(r1.stats.total_cycles < r0.stats.total_cycles);
    CHECK(r1.outputs == r0.outputs);
  }

  TEST_CASE("predication matches the predicated golden pass") {
    const auto net = testutil::random_network(30, 30, 1, 0.5, rnn::Direction::unidirectional, 21);
    const auto utt = rnn::random_utterance(30, 6, 0.6, 10, 8);
    rnn::ForwardOptions o;
    o.theta = -0.2;
    const auto golden = rnn::forward_network(net, utt, o);
    auto c = small(4, 2, 1, 1, 1, LoadBalance::vertical);
    c.predication_theta = -0.2;
    const auto r = simulate_network(net, utt, c);
    CHECK(r.outputs == golden.outputs);
    CHECK(r.predicated_neurons == golden.predication.skipped);
  }

  TEST_CASE("deeper queues never add cycles; weight streaming counts traffic") {
    const auto net = testutil::random_network(48, 48, 2, 0.3, rnn::Direction::bidirectional, 5);
    const auto utt = rnn::random_utterance(48, 4, 0.4, 10, 2);
    auto c1 = small(8, 4, 2, 1, 1, LoadBalance::none);
    auto c4 = c1;
    c4.queue_depth = 4;
    const auto r1 = simulate_network(net, utt, c1);
    const auto r4 = simulate_network(net, utt, c4);
    CHECK(r4.stats.total_cycles <= r1.stats.total_cycles);
    std::uint64_t bytes = 0;
    for (const auto& l : net.layers) bytes += pass_weight_bytes(l.wx, l.wh) + pass_weight_bytes(l.vx, l.vh);
    CHECK(r1.stats.dram_bytes == bytes);
    auto quiet = c1;
    quiet.stream_weights = false;
    const auto rq = simulate_network(net, utt, quiet);
    CHECK(rq.stats.exposed_dram_cycles() == 0);
    CHECK(rq.stats.total_cycles == r1.stats.total_cycles - r1.stats.exposed_dram_cycles());
  }

  TEST_CASE("transfer time rounds up") {
    CHECK(transfer_cycles(0, 25.6) == 0);
    CHECK(transfer_cycles(256, 25.6) == 10);
    CHECK(transfer_cycles(257, 25.6) == 11);
  }

  TEST_CASE("breakdown sums to one") {
    const auto net = testutil::random_network(20, 20, 1, 0.5, rnn::Direction::unidirectional, 3);
    const auto utt = rnn::random_utterance(20, 3, 0.5, 10, 1);
    const auto r = simulate_network(net, utt, small(4, 4, 1, 1, 1, LoadBalance::none));
    CHECK(cycle_breakdown(r.stats).sum() == doctest::Approx(1.0));
    CHECK(r.stats.utilization() > 0.0);
    CHECK(r.stats.utilization() <= 1.0);
  }

  TEST_CASE("shape errors") {
    const auto net = testutil::random_network(20, 20, 1, 0.5, rnn::Direction::unidirectional, 3);
    const auto utt = rnn::random_utterance(21, 3, 0.5, 10, 1);
    CHECK_THROWS_AS((void)simulate_network(net, utt, small(4, 4, 1, 1, 1, LoadBalance::none)), DimensionError);
  }
}
