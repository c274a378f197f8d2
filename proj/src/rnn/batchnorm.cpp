#include "masr/rnn/batchnorm.hpp"

#include <cmath>
#include <string>

#include "masr/common/error.hpp"

namespace masr::rnn {

BatchNormFold fold_constants(const BatchNormParams& bn) {
  const std::size_t n = bn.dim();
  if (bn.sigma2.size() != n || bn.gamma.size() != n || bn.beta.size() != n) {
    throw DimensionError("batch-norm parameter vectors differ in length");
  }
  BatchNormFold fold;
  fold.k0.resize(n);
  fold.k1.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double var = bn.sigma2[j] + bn.epsilon;
    if (!(var > 0.0)) {
      throw ParameterError("batch-norm variance + epsilon must be positive (feature " +
                           std::to_string(j) + ")");
    }
    const double inv = 1.0 / std::sqrt(var);
    fold.k0[j] = bn.gamma[j] * inv;
    fold.k1[j] = bn.beta[j] - bn.gamma[j] * bn.mu[j] * inv;
  }
  return fold;
}

namespace {

void fold_into(DenseMatrix& w, std::vector<double>& bias, const BatchNormFold& fold) {
  for (std::size_t c = 0; c < w.cols; ++c) {
    double shift = 0.0;
    for (std::size_t r = 0; r < w.rows; ++r) shift += w(r, c) * fold.k1[r];
    bias[c] += shift;
  }
  for (std::size_t r = 0; r < w.rows; ++r) {
    for (std::size_t c = 0; c < w.cols; ++c) w(r, c) *= fold.k0[r];
  }
}

}  // namespace

DenseLayer refactor_batchnorm(const DenseLayer& layer, const BatchNormParams& bn) {
  if (bn.dim() != layer.input_dim()) {
    throw DimensionError("batch-norm has " + std::to_string(bn.dim()) + " features but the layer takes " +
                         std::to_string(layer.input_dim()) + " inputs");
  }
  const BatchNormFold fold = fold_constants(bn);
  DenseLayer out = layer;
  fold_into(out.wx, out.b_fwd, fold);
  fold_into(out.vx, out.b_bwd, fold);
  return out;
}

std::vector<double> apply_batchnorm(std::span<const double> x, const BatchNormParams& bn) {
  if (x.size() != bn.dim()) throw DimensionError("batch-norm input has the wrong length");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double var = bn.sigma2[j] + bn.epsilon;
    if (!(var > 0.0)) throw ParameterError("batch-norm variance + epsilon must be positive");
    out[j] = (x[j] - bn.mu[j]) / std::sqrt(var) * bn.gamma[j] + bn.beta[j];
  }
  return out;
}

}  // namespace masr::rnn
