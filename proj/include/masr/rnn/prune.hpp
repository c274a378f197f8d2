#pragma once

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Keeps the ceil(target_nz * size) entries of largest magnitude and zeroes the rest.
/// Ties go to the lower flat (row-major) index.
[[nodiscard]] DenseMatrix prune_magnitude(const DenseMatrix& dense, double target_nz);

/// prune_magnitude followed by sign-split quantisation.
[[nodiscard]] CompactMatrix prune_and_quantize(const DenseMatrix& dense, double target_nz, int bits = 10);

}  // namespace masr::rnn
