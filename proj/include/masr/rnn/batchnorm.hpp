#pragma once

#include <vector>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Per-feature constants of the affine form BN(x) = K0 * x + K1.
struct BatchNormFold {
  std::vector<double> k0;
  std::vector<double> k1;
};

[[nodiscard]] BatchNormFold fold_constants(const BatchNormParams& bn);

/// Folds the batch-norm that precedes `layer` into its input weights and biases, so the layer
/// can consume the sparse pre-normalisation activations directly.
[[nodiscard]] DenseLayer refactor_batchnorm(const DenseLayer& layer, const BatchNormParams& bn);

/// Explicit normalisation, used as the reference path.
[[nodiscard]] std::vector<double> apply_batchnorm(std::span<const double> x, const BatchNormParams& bn);

}  // namespace masr::rnn
