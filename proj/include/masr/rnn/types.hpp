#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "masr/common/quant.hpp"
#include "masr/sparse/compact.hpp"

namespace masr::rnn {

using sparse::Code;
using sparse::CompactMatrix;
using sparse::CompactVector;

/// Real-valued matrix, row-major; rows index inputs and columns index output neurons.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  [[nodiscard]] double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  [[nodiscard]] std::size_t size() const noexcept { return data.size(); }
};

enum class Direction { unidirectional, bidirectional };

struct BatchNormParams {
  std::vector<double> mu;
  std::vector<double> sigma2;
  std::vector<double> gamma;
  std::vector<double> beta;
  double epsilon = 1e-5;

  [[nodiscard]] std::size_t dim() const noexcept { return mu.size(); }
};

/// Floating-point layer, before pruning/quantisation. Forward weights W_x, W_h and
/// backward weights V_x, V_h.
struct DenseLayer {
  DenseMatrix wx, wh, vx, vh;
  std::vector<double> b_fwd, b_bwd;

  [[nodiscard]] std::size_t input_dim() const noexcept { return wx.rows; }
  [[nodiscard]] std::size_t hidden() const noexcept { return wx.cols; }
};

/// Quantised layer as the accelerator stores it. `act` is the scale of the hidden states
/// this layer produces (they are post-ReLU, so only s_pos is used).
struct RnnLayer {
  CompactMatrix wx, wh, vx, vh;
  std::vector<double> b_fwd, b_bwd;
  QuantParams act;

  [[nodiscard]] std::size_t input_dim() const noexcept { return wx.rows(); }
  [[nodiscard]] std::size_t hidden() const noexcept { return wx.cols(); }
  /// Throws DimensionError if the four matrices or biases disagree.
  void validate() const;
};

struct RnnNetwork {
  std::string name;
  Direction direction = Direction::bidirectional;
  std::vector<RnnLayer> layers;

  /// Throws DimensionError unless adjacent layers compose.
  void validate() const;
  [[nodiscard]] std::size_t input_dim() const { return layers.front().input_dim(); }
  [[nodiscard]] std::size_t param_count() const noexcept;
  [[nodiscard]] std::size_t nonzero_count() const noexcept;
};

/// x^1 .. x^T as compact codes sharing one sign-split scale.
struct Utterance {
  std::vector<CompactVector> inputs;
  QuantParams quant;

  [[nodiscard]] std::size_t timesteps() const noexcept { return inputs.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return inputs.empty() ? 0 : inputs.front().dim(); }
};

}  // namespace masr::rnn
