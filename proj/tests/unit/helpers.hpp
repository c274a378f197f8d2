#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "masr/rnn/quantize.hpp"
#include "masr/rnn/synthetic.hpp"
#include "masr/rnn/types.hpp"
#include "masr/sparse/compact.hpp"

namespace testutil {

using namespace masr;

inline sparse::DenseCodes random_codes(std::size_t rows, std::size_t cols, double nz, std::uint64_t seed,
                                       int max_mag = 511) {
  std::mt19937_64 g(seed);
  std::bernoulli_distribution keep(nz);
  std::uniform_int_distribution<int> mag(1, max_mag);
  sparse::DenseCodes d(rows, cols);
  for (auto& c : d.data) {
    if (keep(g)) c = static_cast<sparse::Code>((g() & 1) ? mag(g) : -mag(g));
  }
  return d;
}

inline std::vector<sparse::Code> random_dense_vector(std::size_t n, double nz, std::uint64_t seed, bool signed_ = true) {
  std::mt19937_64 g(seed);
  std::bernoulli_distribution keep(nz);
  std::uniform_int_distribution<int> mag(1, 511);
  std::vector<sparse::Code> v(n, 0);
  for (auto& c : v) {
    if (keep(g)) c = static_cast<sparse::Code>(signed_ && (g() & 1) ? -mag(g) : mag(g));
  }
  return v;
}

inline rnn::DenseMatrix random_dense(std::size_t rows, std::size_t cols, double nz, std::uint64_t seed,
                                     double sd = 1.0) {
  std::mt19937_64 g(seed);
  std::bernoulli_distribution keep(nz);
  std::normal_distribution<double> n(0.0, sd);
  rnn::DenseMatrix m(rows, cols);
  for (auto& w : m.data) {
    if (keep(g)) w = n(g);
  }
  return m;
}

/// Random quantised layer with biases and an output scale that keeps states unsaturated
/// most of the time. No calibration, so any shape works.
inline rnn::RnnLayer random_layer(std::size_t in, std::size_t hidden, double nz, std::uint64_t seed,
                                  double bias_mean = 0.0) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  const double sd = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, in)) * nz);
  rnn::RnnLayer l;
  l.wx = rnn::quantize(random_dense(in, hidden, nz, seed * 4 + 1, sd), 10).first;
  l.wh = rnn::quantize(random_dense(hidden, hidden, nz, seed * 4 + 2, 0.5 * sd), 10).first;
  l.vx = rnn::quantize(random_dense(in, hidden, nz, seed * 4 + 3, sd), 10).first;
  l.vh = rnn::quantize(random_dense(hidden, hidden, nz, seed * 4 + 4, 0.5 * sd), 10).first;
  for (std::size_t j = 0; j < hidden; ++j) l.b_fwd.push_back(bias_mean + 0.3 * n(g));
  for (std::size_t j = 0; j < hidden; ++j) l.b_bwd.push_back(bias_mean + 0.3 * n(g));
  l.act.bits = 10;
  l.act.s_pos = 3.0;
  l.act.s_neg = 3.0;
  return l;
}

inline rnn::RnnNetwork random_network(std::size_t in, std::size_t hidden, std::size_t layers, double nz,
                                      rnn::Direction dir, std::uint64_t seed) {
  rnn::RnnNetwork net;
  net.name = "random";
  net.direction = dir;
  for (std::size_t l = 0; l < layers; ++l) net.layers.push_back(random_layer(l == 0 ? in : hidden, hidden, nz, seed + l));
  return net;
}

}  // namespace testutil
