#include "masr/rnn/float_reference.hpp"

#include <algorithm>

#include "masr/common/error.hpp"
#include "masr/rnn/batchnorm.hpp"

namespace masr::rnn {

namespace {

RealSequence run(const DenseMatrix& win, const DenseMatrix& wh, const std::vector<double>& bias,
                 const RealSequence& xs, bool reverse) {
  const std::size_t n = win.cols;
  RealSequence states(xs.size(), std::vector<double>(n, 0.0));
  std::vector<double> h(n, 0.0);
  std::vector<double> z(n);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const std::size_t t = reverse ? xs.size() - 1 - k : k;
    for (std::size_t j = 0; j < n; ++j) z[j] = bias[j];
    for (std::size_t r = 0; r < wh.rows; ++r) {
      if (h[r] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) z[j] += wh(r, j) * h[r];
    }
    for (std::size_t r = 0; r < win.rows; ++r) {
      const double x = xs[t][r];
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) z[j] += win(r, j) * x;
    }
    for (std::size_t j = 0; j < n; ++j) h[j] = std::max(0.0, z[j]);
    states[t] = h;
  }
  return states;
}

}  // namespace

RealSequence forward_float(const DenseLayer& layer, const RealSequence& inputs, Direction direction,
                           const BatchNormParams* bn) {
  RealSequence xs = inputs;
  for (auto& x : xs) {
    if (x.size() != layer.input_dim()) throw DimensionError("forward_float: input length mismatch");
    if (bn != nullptr) x = apply_batchnorm(x, *bn);
  }
  RealSequence y = run(layer.wx, layer.wh, layer.b_fwd, xs, false);
  if (direction == Direction::bidirectional) {
    const RealSequence g = run(layer.vx, layer.vh, layer.b_bwd, xs, true);
    for (std::size_t t = 0; t < y.size(); ++t) {
      for (std::size_t j = 0; j < y[t].size(); ++j) y[t][j] += g[t][j];
    }
  }
  return y;
}

}  // namespace masr::rnn
