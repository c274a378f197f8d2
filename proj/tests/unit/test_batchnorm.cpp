#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "masr/rnn/batchnorm.hpp"
#include "masr/rnn/float_reference.hpp"

using namespace masr::rnn;

namespace {

BatchNormParams random_bn(std::size_t n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.1, 2.0), m(-1.0, 1.0);
  BatchNormParams bn;
  for (std::size_t i = 0; i < n; ++i) {
    bn.mu.push_back(m(g));
    bn.sigma2.push_back(u(g));
    bn.gamma.push_back(m(g) * 2.0);
    bn.beta.push_back(m(g));
  }
  return bn;
}

double max_rel_err(const RealSequence& a, const RealSequence& b) {
  double worst = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t i = 0; i < a[t].size(); ++i) {
      const double d = std::abs(a[t][i] - b[t][i]);
      worst = std::max(worst, d / std::max(1.0, std::abs(b[t][i])));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("batchnorm") {
  TEST_CASE("folded layer matches explicit normalisation") {
    std::mt19937_64 g(21);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t in = 5 + trial % 7, hidden = 4 + trial % 5;
      DenseLayer l;
      l.wx = testutil::random_dense(in, hidden, 0.7, 100 + trial, 0.5);
      l.wh = testutil::random_dense(hidden, hidden, 0.7, 200 + trial, 0.3);
      l.vx = testutil::random_dense(in, hidden, 0.7, 300 + trial, 0.5);
      l.vh = testutil::random_dense(hidden, hidden, 0.7, 400 + trial, 0.3);
      for (std::size_t j = 0; j < hidden; ++j) {
        l.b_fwd.push_back(n(g));
        l.b_bwd.push_back(n(g));
      }
      const BatchNormParams bn = random_bn(in, g);
      RealSequence x(6, std::vector<double>(in));
      for (auto& v : x) {
        for (auto& e : v) e = trial % 3 == 0 ? -std::abs(n(g)) : n(g);
      }
      if (trial % 5 == 0) x.assign(6, std::vector<double>(in, 0.0));
      const DenseLayer folded = refactor_batchnorm(l, bn);
      const auto ref = forward_float(l, x, Direction::bidirectional, &bn);
      const auto got = forward_float(folded, x, Direction::bidirectional);
      CHECK(max_rel_err(got, ref) <= 1e-5);
    }
  }

  TEST_CASE("fold constants") {
    BatchNormParams bn{{1.0}, {4.0}, {2.0}, {0.5}, 0.0};
    const auto f = fold_constants(bn);
    CHECK(f.k0[0] == doctest::Approx(1.0));   // gamma / sqrt(sigma2)
    CHECK(f.k1[0] == doctest::Approx(-0.5));  // beta - mu * k0
  }
}
