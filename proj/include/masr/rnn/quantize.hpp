#pragma once

#include <utility>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Sign-split quantisation of a real matrix. s_pos / s_neg are the largest positive and
/// negative magnitudes; each nonzero maps to round(|w| / s * (2^(bits-1) - 1)). Weights whose
/// code rounds to zero are dropped from the mask.
[[nodiscard]] std::pair<CompactMatrix, QuantParams> quantize(const DenseMatrix& dense, int bits = 10);

/// Same scheme for a vector with fixed, caller-supplied scales (saturating).
[[nodiscard]] CompactVector quantize_vector(std::span<const double> values, const QuantParams& q);

[[nodiscard]] double dequantize(Code code, const QuantParams& q) noexcept;

/// Code of a nonnegative value under scale s, saturated at the maximum code.
[[nodiscard]] Code quantize_activation(double value, double scale, std::int32_t max_code) noexcept;

[[nodiscard]] DenseMatrix dequantize(const CompactMatrix& m);

}  // namespace masr::rnn
