#include <doctest.h>

#include "masr/common/error.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/synthetic.hpp"

using namespace masr::rnn;

TEST_SUITE("synthetic") {
  TEST_CASE("same seed, same model; densities near target") {
    SyntheticSpec s;
    s.hidden = 96;
    s.layers = 2;
    s.timesteps = 6;
    s.weight_nz = 0.3;
    s.act_nz = 0.25;
    const auto a = generate_synthetic(s);
    const auto b = generate_synthetic(s);
    CHECK(a.net.layers[1].wh == b.net.layers[1].wh);
    CHECK(a.utterance.inputs == b.utterance.inputs);
    REQUIRE(a.hidden_nz.size() == 2);
    for (double nz : a.hidden_nz) CHECK(nz == doctest::Approx(0.25).epsilon(0.02 / 0.25));
    const double wnz = static_cast<double>(a.net.layers[0].wx.nnz()) / (96.0 * 96.0);
    CHECK(wnz == doctest::Approx(0.3).epsilon(0.1));
    s.seed = 2;
    CHECK_FALSE(generate_synthetic(s).net.layers[0].wx == a.net.layers[0].wx);
  }

  TEST_CASE("random utterance density") {
    const Utterance u = random_utterance(500, 20, 0.4, 10, 3);
    CHECK(u.timesteps() == 20);
    CHECK(mean_density(u.inputs) == doctest::Approx(0.4).epsilon(0.05));
  }

  TEST_CASE("rejects impossible specs") {
    SyntheticSpec s;
    s.hidden = 0;
    CHECK_THROWS_AS((void)generate_synthetic(s), masr::ParameterError);
  }
}
