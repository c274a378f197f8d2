#pragma once

#include <vector>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

using RealSequence = std::vector<std::vector<double>>;

/// Double-precision bidirectional ReLU layer. If `bn` is given it is applied to every input
/// first; the refactored layer should reproduce that output from the raw inputs.
[[nodiscard]] RealSequence forward_float(const DenseLayer& layer, const RealSequence& inputs,
                                         Direction direction, const BatchNormParams* bn = nullptr);

}  // namespace masr::rnn
