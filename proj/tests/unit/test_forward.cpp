#include <doctest.h>

#include "helpers.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/quantize.hpp"

using namespace masr;
using namespace masr::rnn;

TEST_SUITE("forward") {
  TEST_CASE("merge saturates at the maximum code") {
    const auto h = sparse::encode_vector(std::vector<Code>{500, 0, 3, 0});
    const auto g = sparse::encode_vector(std::vector<Code>{20, 0, 0, 9});
    CHECK(merge_directions(h, g, 511).decode() == std::vector<Code>{511, 0, 3, 9});
  }

  TEST_CASE("zero weights give the quantised ReLU of the bias") {
    RnnLayer l;
    l.wx = CompactMatrix::encode(sparse::DenseCodes(3, 4));
    l.wh = CompactMatrix::encode(sparse::DenseCodes(4, 4));
    l.vx = l.wx;
    l.vh = l.wh;
    l.b_fwd = {1.0, -1.0, 0.25, 5.0};
    l.b_bwd = {0.0, 0.0, 0.0, 0.0};
    l.act = QuantParams{10, 2.0, 2.0};
    const Utterance u = random_utterance(3, 3, 0.5, 10, 1);
    const auto r = forward_layer(l, u.inputs, u.quant, Direction::unidirectional);
    for (const auto& v : r.outputs) {
      CHECK(v.decode() == std::vector<Code>{quantize_activation(1.0, 2.0, 511), 0, quantize_activation(0.25, 2.0, 511),
                                            511});
    }
  }

  TEST_CASE("parallel and serial golden passes agree") {
    const auto net = testutil::random_network(20, 24, 2, 0.4, Direction::bidirectional, 3);
    const Utterance u = random_utterance(20, 6, 0.5, 10, 4);
    const auto a = forward_network(net, u, {.parallel = true, .theta = {}});
    const auto b = forward_network(net, u, {.parallel = false, .theta = {}});
    CHECK(a.outputs == b.outputs);
  }

  TEST_CASE("predication with a very low threshold changes nothing") {
    const auto net = testutil::random_network(16, 20, 1, 0.5, Direction::bidirectional, 8);
    const Utterance u = random_utterance(16, 5, 0.5, 10, 9);
    const auto r = forward_predicated(net.layers[0], u.inputs, u.quant, Direction::bidirectional, -1e9);
    CHECK(r.stats.skipped == 0);
    CHECK(r.stats.mismatches == 0);
    CHECK(r.stats.neurons == 2u * 5u * 20u);
  }

  TEST_CASE("mismatches count state differences against the plain pass") {
    const auto net = testutil::random_network(16, 40, 1, 0.5, Direction::unidirectional, 12);
    const Utterance u = random_utterance(16, 8, 0.5, 10, 13);
    const auto r = forward_predicated(net.layers[0], u.inputs, u.quant, Direction::unidirectional, 0.0);
    CHECK(r.stats.skipped > 0);
    const auto plain = forward_layer(net.layers[0], u.inputs, u.quant, Direction::unidirectional);
    std::uint64_t diff = 0;
    for (std::size_t t = 0; t < plain.outputs.size(); ++t) {
      for (std::size_t j = 0; j < 40; ++j) diff += plain.forward_states[t].at(j) != r.result.forward_states[t].at(j);
    }
    CHECK(diff == r.stats.mismatches);
  }
}
