#include "masr/rnn/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "masr/common/error.hpp"

namespace masr::rnn {

namespace {

void check_bits(int bits) {
  if (bits < 2 || bits > 16) throw ParameterError("quantisation needs 2..16 bits, got " + std::to_string(bits));
}

Code encode_signed(double w, const QuantParams& q) noexcept {
  if (w == 0.0) return 0;
  const bool negative = w < 0.0;
  const double scale = q.scale_for(negative);
  if (scale <= 0.0) return 0;
  const double mag = std::min(std::abs(w) / scale, 1.0) * q.max_code();
  const auto code = static_cast<Code>(std::lround(mag));
  return negative ? static_cast<Code>(-code) : code;
}

}  // namespace

std::pair<CompactMatrix, QuantParams> quantize(const DenseMatrix& dense, int bits) {
  check_bits(bits);
  QuantParams q;
  q.bits = bits;
  for (double w : dense.data) {
    if (w > 0.0) q.s_pos = std::max(q.s_pos, w);
    if (w < 0.0) q.s_neg = std::max(q.s_neg, -w);
  }
  sparse::DenseCodes codes(dense.rows, dense.cols);
  for (std::size_t i = 0; i < dense.data.size(); ++i) codes.data[i] = encode_signed(dense.data[i], q);
  return {CompactMatrix::encode(codes, q), q};
}

CompactVector quantize_vector(std::span<const double> values, const QuantParams& q) {
  check_bits(q.bits);
  std::vector<Code> codes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) codes[i] = encode_signed(values[i], q);
  return sparse::encode_vector(codes);
}

double dequantize(Code code, const QuantParams& q) noexcept {
  if (code == 0) return 0.0;
  const double mag = static_cast<double>(std::abs(code)) / q.max_code();
  return code < 0 ? -mag * q.s_neg : mag * q.s_pos;
}

Code quantize_activation(double value, double scale, std::int32_t max_code) noexcept {
  if (!(value > 0.0) || !(scale > 0.0)) return 0;
  const double mag = value / scale * max_code;
  if (mag >= max_code) return static_cast<Code>(max_code);
  return static_cast<Code>(std::lround(mag));
}

DenseMatrix dequantize(const CompactMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  const auto codes = m.decode();
  for (std::size_t i = 0; i < codes.data.size(); ++i) out.data[i] = dequantize(codes.data[i], m.quant());
  return out;
}

}  // namespace masr::rnn
